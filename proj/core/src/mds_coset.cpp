// SPDX-License-Identifier: Apache-2.0
#include "smdc/mds_coset.hpp"

#include "smdc/errors.hpp"

#include <algorithm>
#include <set>

namespace smdc::coset {

CosetCode::CosetCode(Field field, std::size_t L, std::size_t N, std::size_t m)
    : CosetCode(field, L, N, m, default_nodes(field, L)) {}

CosetCode::CosetCode(Field field, std::size_t L, std::size_t N, std::size_t m, std::vector<Symbol> nodes)
    : field_(std::move(field)),
      L_(L),
      N_(N),
      m_(m),
      nodes_(std::move(nodes)),
      generator_(field_, 0, 0) {
    if (!(N < m && m <= L))
        throw InvalidParameterError("coset code requires 0 <= N < m <= L, got (L,N,m)=(" + std::to_string(L) + "," +
                                    std::to_string(N) + "," + std::to_string(m) + ")");
    if (nodes_.size() != L) throw InvalidParameterError("coset code needs exactly L evaluation nodes");
    generator_ = vandermonde(field_, nodes_, m_);
}

ShareVector CosetCode::encode(std::span<const Symbol> message, std::span<const Symbol> key) const {
    if (message.size() != message_symbols())
        throw InvalidParameterError("message block must have " + std::to_string(message_symbols()) + " symbols, got " +
                                    std::to_string(message.size()));
    if (key.size() != N_)
        throw InvalidParameterError("key must have " + std::to_string(N_) + " symbols, got " +
                                    std::to_string(key.size()));
    std::vector<Symbol> x(key.begin(), key.end());
    x.insert(x.end(), message.begin(), message.end());
    for (Symbol s : x) {
        if (!field_.contains(s)) throw InvalidParameterError("symbol outside " + field_.spec().name());
    }
    return {generator_.apply(x)};
}

std::vector<Symbol> CosetCode::decode(std::span<const ObservedShare> observed) const {
    std::vector<ObservedShare> sorted(observed.begin(), observed.end());
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.encoder < b.encoder; });
    std::vector<std::size_t> encoders;
    std::vector<Symbol> values;
    for (const auto& o : sorted) {
        if (o.encoder >= L_) throw InvalidParameterError("encoder index " + std::to_string(o.encoder) + " out of range");
        if (!encoders.empty() && encoders.back() == o.encoder) {
            if (values.back() != o.value) throw DecodeError("conflicting shares for encoder " + std::to_string(o.encoder));
            continue;
        }
        encoders.push_back(o.encoder);
        values.push_back(o.value);
    }
    return Decoder(*this, encoders).decode(values);
}

std::vector<Symbol> CosetCode::keygen(EntropySource& entropy) const {
    std::vector<Symbol> key(N_);
    for (auto& k : key) k = entropy.next_symbol(field_.order());
    return key;
}

CosetCode::Decoder::Decoder(const CosetCode& code, std::span<const std::size_t> encoders)
    : N_(code.N_), m_(code.m_), encoders_(encoders.begin(), encoders.end()), inverse_(code.field(), 0, 0) {
    if (std::set<std::size_t>(encoders_.begin(), encoders_.end()).size() != encoders_.size())
        throw InvalidParameterError("decoder encoder set has duplicates");
    if (encoders_.size() < code.m_) throw InsufficientSharesError(code.m_, encoders_.size());
    const std::span<const std::size_t> head(encoders_.data(), code.m_);
    auto inv = invert(code.generator_.select_rows(head));
    if (!inv) throw DecodeError("selected generator rows are singular");
    inverse_ = std::move(*inv);
    if (encoders_.size() > code.m_) {
        const std::span<const std::size_t> tail(encoders_.data() + code.m_, encoders_.size() - code.m_);
        checks_ = code.generator_.select_rows(tail);
    }
}

std::vector<Symbol> CosetCode::Decoder::decode(std::span<const Symbol> values) const {
    const std::size_t m = m_;
    if (values.size() != encoders_.size()) throw InvalidParameterError("decoder got the wrong number of shares");
    const std::vector<Symbol> full = inverse_.apply(values.first(m));
    if (checks_) {
        const std::vector<Symbol> predicted = checks_->apply(full);
        for (std::size_t i = 0; i < predicted.size(); ++i) {
            if (predicted[i] != values[m + i])
                throw DecodeError("share of encoder " + std::to_string(encoders_[m + i]) + " is not in the code");
        }
    }
    return {full.begin() + static_cast<std::ptrdiff_t>(N_), full.end()};
}

}  // namespace smdc::coset
