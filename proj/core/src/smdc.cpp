// SPDX-License-Identifier: Apache-2.0
#include "smdc/smdc.hpp"

#include "smdc/errors.hpp"

#include <map>

namespace smdc::multilevel {

ssdc::Params Params::level(std::size_t k) const { return {L, N, N + k, field}; }

void Params::validate() const {
    if (N >= L)
        throw InvalidParameterError("(L,N) must satisfy N < L, got (" + std::to_string(L) + "," + std::to_string(N) +
                                    ")");
    if (source_lengths.size() != source_count())
        throw InvalidParameterError("expected " + std::to_string(source_count()) + " sources, got " +
                                    std::to_string(source_lengths.size()));
    level(1).validate();
}

std::size_t Layout::payload_length(std::size_t encoder) const {
    std::size_t total = 0;
    for (const auto& s : sources) total += s.payload_lengths.at(encoder);
    return total;
}

std::vector<Symbol> ShareBundle::payload(std::size_t encoder) const {
    std::vector<Symbol> out;
    for (const auto& b : per_source) {
        const auto& part = b.payloads.at(encoder);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<ssdc::EncoderPayload> ShareBundle::select(std::span<const std::size_t> encoders) const {
    std::vector<ssdc::EncoderPayload> out;
    for (std::size_t l : encoders) {
        if (l >= layout.params.L) throw InvalidParameterError("encoder index out of range");
        out.push_back({l, payload(l)});
    }
    return out;
}

Layout plan(const Params& params) {
    params.validate();
    Layout layout{params, {}};
    for (std::size_t k = 1; k <= params.source_count(); ++k)
        layout.sources.push_back(ssdc::plan_symmetric(params.level(k), params.source_lengths[k - 1]));
    return layout;
}

Layout plan_at_rates(const Params& params, std::span<const ssdc::RateAssignment> rates) {
    params.validate();
    if (rates.size() != params.source_count())
        throw InvalidParameterError("expected one rate assignment per source");
    Layout layout{params, {}};
    for (std::size_t k = 1; k <= params.source_count(); ++k) {
        try {
            layout.sources.push_back(ssdc::plan_at_rate(params.level(k), params.source_lengths[k - 1], rates[k - 1]));
        } catch (const RegionViolationError& e) {
            throw RegionViolationError("source " + std::to_string(k) + ": " + e.what(), e.subset());
        }
    }
    return layout;
}

ShareBundle encode(const Layout& layout, std::span<const std::vector<Symbol>> sources, EntropySource& entropy) {
    const Params& params = layout.params;
    if (sources.size() != params.source_count())
        throw InvalidParameterError("expected " + std::to_string(params.source_count()) + " sources, got " +
                                    std::to_string(sources.size()));
    ShareBundle bundle{layout, {}};
    for (std::size_t k = 1; k <= sources.size(); ++k) {
        auto stream = entropy.fork(k);
        try {
            bundle.per_source.push_back(ssdc::encode(layout.sources[k - 1], sources[k - 1], *stream));
        } catch (const InvalidParameterError& e) {
            throw InvalidParameterError("source " + std::to_string(k) + ": " + e.what());
        }
    }
    return bundle;
}

ShareBundle encode(const Params& params, std::span<const std::vector<Symbol>> sources, EntropySource& entropy) {
    return encode(plan(params), sources, entropy);
}

ShareBundle encode_at_rates(const Params& params, std::span<const std::vector<Symbol>> sources,
                            std::span<const ssdc::RateAssignment> rates, EntropySource& entropy) {
    return encode(plan_at_rates(params, rates), sources, entropy);
}

std::vector<std::vector<Symbol>> decode(const Layout& layout, std::span<const ssdc::EncoderPayload> observed) {
    const Params& params = layout.params;
    std::map<std::size_t, const std::vector<Symbol>*> have;
    for (const auto& o : observed) {
        if (o.encoder >= params.L)
            throw InvalidParameterError("encoder index " + std::to_string(o.encoder + 1) + " outside 1.." +
                                        std::to_string(params.L));
        if (o.symbols.size() != layout.payload_length(o.encoder))
            throw DecodeError("payload of encoder " + std::to_string(o.encoder + 1) + " has the wrong length");
        auto [it, inserted] = have.emplace(o.encoder, &o.symbols);
        if (!inserted && *it->second != o.symbols)
            throw DecodeError("conflicting payloads for encoder " + std::to_string(o.encoder + 1));
    }
    if (have.size() <= params.N) throw InsufficientSharesError(params.N + 1, have.size());

    const std::size_t recoverable = std::min(have.size() - params.N, params.source_count());
    std::vector<std::vector<Symbol>> out;
    std::vector<std::size_t> offset(params.L, 0);
    for (std::size_t k = 1; k <= params.source_count(); ++k) {
        const auto& sub = layout.sources[k - 1];
        if (k <= recoverable) {
            std::vector<ssdc::EncoderPayload> part;
            for (const auto& [l, symbols] : have) {
                const auto first = symbols->begin() + static_cast<std::ptrdiff_t>(offset[l]);
                part.push_back({l, {first, first + static_cast<std::ptrdiff_t>(sub.payload_lengths[l])}});
            }
            out.push_back(ssdc::decode(sub, part));
        }
        for (std::size_t l = 0; l < params.L; ++l) offset[l] += sub.payload_lengths[l];
    }
    return out;
}

region::RateTuple rate_of(const Layout& layout, const Rational& normalization) {
    if (normalization <= 0) throw InvalidParameterError("rate normalization must be positive");
    region::RateTuple t(std::vector<Rational>(layout.params.L, 0));
    for (std::size_t l = 0; l < layout.params.L; ++l)
        t[l] = Rational(static_cast<long long>(layout.payload_length(l))) / normalization;
    return t;
}

region::RateTuple rate_of(const ShareBundle& bundle, const Rational& normalization) {
    return rate_of(bundle.layout, normalization);
}

}  // namespace smdc::multilevel
