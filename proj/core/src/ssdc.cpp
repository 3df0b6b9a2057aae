// SPDX-License-Identifier: Apache-2.0
#include "smdc/ssdc.hpp"

#include "smdc/errors.hpp"
#include "smdc/mds_coset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace smdc::ssdc {

namespace {

std::string subset_string(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + 1);
    }
    return out + "}";
}

std::vector<std::size_t> participants(const Params& params, const Piece& piece) {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < params.L; ++l) {
        if (!std::binary_search(piece.zero_set.begin(), piece.zero_set.end(), l)) out.push_back(l);
    }
    return out;
}

coset::CosetCode piece_code(const Params& params, const Piece& piece) {
    const std::size_t z = piece.zero_set.size();
    return coset::CosetCode(params.field, params.L - z, params.N, params.m - z);
}

std::size_t piece_block_size(const Params& params, const Piece& piece) {
    return params.k() - piece.zero_set.size();
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::vector<std::size_t> checked_zero_set(const Params& params, std::span<const std::size_t> zero_set) {
    std::vector<std::size_t> z(zero_set.begin(), zero_set.end());
    std::sort(z.begin(), z.end());
    if (std::adjacent_find(z.begin(), z.end()) != z.end())
        throw InvalidParameterError("zero set has repeated encoders");
    if (!z.empty() && z.back() >= params.L) throw InvalidParameterError("zero set names an encoder outside 1..L");
    if (z.size() >= params.k())
        throw InfeasibleCornerError("zero set of size " + std::to_string(z.size()) + " is infeasible: at most m-N-1 = " +
                                    std::to_string(params.k() - 1) + " encoders may have rate zero");
    return z;
}

void finish_layout(Layout& layout) {
    const auto coded = layout.coded_lengths();
    if (layout.payload_lengths.empty()) {
        layout.payload_lengths = coded;
        return;
    }
    for (std::size_t l = 0; l < coded.size(); ++l)
        layout.payload_lengths[l] = std::max(layout.payload_lengths[l], coded[l]);
}

}  // namespace

void Params::validate() const {
    if (!(N < m && m <= L))
        throw InvalidParameterError("(L,N,m) must satisfy 0 <= N < m <= L, got (" + std::to_string(L) + "," +
                                    std::to_string(N) + "," + std::to_string(m) + ")");
    if (L + 1 > field.order())
        throw InvalidParameterError("field " + field.spec().name() + " is too small for " + std::to_string(L) +
                                    " encoders");
}

std::size_t Layout::block_count() const {
    std::size_t total = 0;
    for (const auto& p : pieces) total += p.blocks;
    return total;
}

std::vector<std::size_t> Layout::coded_lengths() const {
    std::vector<std::size_t> out(params.L, 0);
    for (const auto& p : pieces) {
        for (std::size_t l : participants(params, p)) out[l] += p.blocks;
    }
    return out;
}

std::vector<EncoderPayload> ShareBundle::select(std::span<const std::size_t> encoders) const {
    std::vector<EncoderPayload> out;
    for (std::size_t l : encoders) {
        if (l >= payloads.size()) throw InvalidParameterError("encoder index out of range");
        out.push_back({l, payloads[l]});
    }
    return out;
}

std::vector<Corner> corners(const Params& params) {
    params.validate();
    std::vector<Corner> out;
    for (std::size_t z = 0; z < params.k(); ++z) {
        const Rational value(1, static_cast<long long>(params.k() - z));
        for (auto& zs : region::subsets(params.L, z)) {
            region::RateTuple t(std::vector<Rational>(params.L, value));
            for (std::size_t l : zs) t[l] = 0;
            out.push_back({std::move(zs), std::move(t)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Corner& a, const Corner& b) { return a.zero_set < b.zero_set; });
    return out;
}

Layout plan_corner(const Params& params, std::size_t message_length, std::span<const std::size_t> zero_set) {
    params.validate();
    Layout layout;
    layout.params = params;
    layout.message_length = message_length;
    Piece piece;
    piece.zero_set = checked_zero_set(params, zero_set);
    piece.message_symbols = message_length;
    piece.blocks = ceil_div(message_length, piece_block_size(params, piece));
    layout.pieces.push_back(std::move(piece));
    finish_layout(layout);
    return layout;
}

Layout plan_symmetric(const Params& params, std::size_t message_length) {
    return plan_corner(params, message_length, {});
}

Layout plan_at_rate(const Params& params, std::size_t message_length, const RateAssignment& rates) {
    params.validate();
    const region::RateTuple target(rates.per_encoder_symbols);
    if (target.size() != params.L)
        throw InvalidParameterError("rate assignment has " + std::to_string(target.size()) + " entries, expected " +
                                    std::to_string(params.L));
    const auto membership = region::contains(region::region(params.L, params.k(), 1), target);
    if (!membership.inside) {
        if (!membership.violated_row)
            throw RegionViolationError("rate of encoder " + std::to_string(membership.witness.front() + 1) +
                                           " is negative",
                                       membership.witness);
        Rational sum = 0;
        for (std::size_t l : membership.witness) sum += target[l];
        throw RegionViolationError("rates violate the region: subset D=" + subset_string(membership.witness) +
                                       " sums to " + to_string(sum) + " < 1 (message entropy)",
                                   membership.witness);
    }

    const auto candidates = corners(params);
    std::vector<std::pair<std::size_t, Rational>> weights;  // corner index, weight

    // A single corner dominated by the target: least padding, then the
    // lexicographically smallest zero set (candidates are already sorted).
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& v = candidates[i].rates;
        bool below = true;
        for (std::size_t l = 0; l < params.L && below; ++l) below = v[l] <= target[l];
        if (!below) continue;
        if (!best || v.sum() > candidates[*best].rates.sum()) best = i;
    }
    if (best) {
        weights.emplace_back(*best, Rational(1));
    } else {
        // Otherwise time-share between corners.
        std::vector<region::RateTuple> points;
        for (const auto& c : candidates) points.push_back(c.rates);
        const auto d = region::decompose(points, target);
        if (!d) throw RegionViolationError("rates admit no corner decomposition", {});
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (d->weights[i] > 0) weights.emplace_back(i, d->weights[i]);
        }
    }

    // Largest-remainder apportionment of message symbols among pieces.
    std::vector<std::size_t> counts(weights.size());
    std::vector<std::pair<Rational, std::size_t>> fractions;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const Rational share = weights[i].second * static_cast<long long>(message_length);
        counts[i] = static_cast<std::size_t>(floor_int(share));
        assigned += counts[i];
        fractions.emplace_back(share - Rational(static_cast<long long>(counts[i])), i);
    }
    std::stable_sort(fractions.begin(), fractions.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < message_length; ++i, ++assigned) ++counts[fractions[i % fractions.size()].second];

    Layout layout;
    layout.params = params;
    layout.message_length = message_length;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (counts[i] == 0 && !(message_length == 0 && layout.pieces.empty())) continue;
        Piece piece;
        piece.zero_set = candidates[weights[i].first].zero_set;
        piece.message_symbols = counts[i];
        piece.blocks = ceil_div(counts[i], piece_block_size(params, piece));
        layout.pieces.push_back(std::move(piece));
    }
    // Declared rates are honored by rounding up, never down.
    layout.payload_lengths.resize(params.L);
    for (std::size_t l = 0; l < params.L; ++l)
        layout.payload_lengths[l] =
            static_cast<std::size_t>(ceil_int(target[l] * static_cast<long long>(message_length)));
    finish_layout(layout);
    return layout;
}

ShareBundle encode(const Layout& layout, std::span<const Symbol> message, EntropySource& entropy) {
    const Params& params = layout.params;
    params.validate();
    if (message.size() != layout.message_length)
        throw InvalidParameterError("message has " + std::to_string(message.size()) + " symbols, layout expects " +
                                    std::to_string(layout.message_length));
    for (Symbol s : message) {
        if (!params.field.contains(s)) throw InvalidParameterError("message symbol outside " + params.field.spec().name());
    }
    ShareBundle bundle;
    bundle.layout = layout;
    bundle.payloads.assign(params.L, {});
    std::size_t offset = 0;
    for (const auto& piece : layout.pieces) {
        const auto code = piece_code(params, piece);
        const auto who = participants(params, piece);
        const std::size_t block = piece_block_size(params, piece);
        std::vector<Symbol> chunk(block);
        for (std::size_t b = 0; b < piece.blocks; ++b) {
            for (std::size_t i = 0; i < block; ++i) {
                const std::size_t pos = b * block + i;
                chunk[i] = pos < piece.message_symbols ? message[offset + pos] : 0;
            }
            const auto key = code.keygen(entropy);
            const auto shares = code.encode(chunk, key);
            for (std::size_t j = 0; j < who.size(); ++j) bundle.payloads[who[j]].push_back(shares.shares[j]);
        }
        offset += piece.message_symbols;
    }
    for (std::size_t l = 0; l < params.L; ++l) bundle.payloads[l].resize(layout.payload_lengths[l], 0);
    return bundle;
}

ShareBundle encode_symmetric(const Params& params, std::span<const Symbol> message, EntropySource& entropy) {
    return encode(plan_symmetric(params, message.size()), message, entropy);
}

ShareBundle encode_corner(const Params& params, std::span<const Symbol> message,
                          std::span<const std::size_t> zero_set, EntropySource& entropy) {
    return encode(plan_corner(params, message.size(), zero_set), message, entropy);
}

ShareBundle encode_at_rate(const Params& params, std::span<const Symbol> message, const RateAssignment& rates,
                           EntropySource& entropy) {
    return encode(plan_at_rate(params, message.size(), rates), message, entropy);
}

std::vector<Symbol> decode(const Layout& layout, std::span<const EncoderPayload> observed) {
    const Params& params = layout.params;
    std::map<std::size_t, const std::vector<Symbol>*> have;
    for (const auto& o : observed) {
        if (o.encoder >= params.L)
            throw InvalidParameterError("encoder index " + std::to_string(o.encoder + 1) + " outside 1.." +
                                        std::to_string(params.L));
        if (o.symbols.size() != layout.payload_lengths[o.encoder])
            throw DecodeError("payload of encoder " + std::to_string(o.encoder + 1) + " has " +
                              std::to_string(o.symbols.size()) + " symbols, layout says " +
                              std::to_string(layout.payload_lengths[o.encoder]));
        auto [it, inserted] = have.emplace(o.encoder, &o.symbols);
        if (!inserted && *it->second != o.symbols)
            throw DecodeError("conflicting payloads for encoder " + std::to_string(o.encoder + 1));
    }
    if (have.size() < params.m) throw InsufficientSharesError(params.m, have.size());

    const auto coded = layout.coded_lengths();
    for (const auto& [l, symbols] : have) {
        for (std::size_t i = coded[l]; i < symbols->size(); ++i) {
            if ((*symbols)[i] != 0) throw DecodeError("nonzero padding in payload of encoder " + std::to_string(l + 1));
        }
    }

    std::vector<Symbol> message;
    message.reserve(layout.message_length);
    std::vector<std::size_t> cursor(params.L, 0);
    for (const auto& piece : layout.pieces) {
        const auto code = piece_code(params, piece);
        const auto who = participants(params, piece);
        std::vector<std::size_t> sub_index;   // row of the piece's code
        std::vector<std::size_t> encoder_of;  // corresponding encoder
        for (std::size_t j = 0; j < who.size(); ++j) {
            if (have.count(who[j])) {
                sub_index.push_back(j);
                encoder_of.push_back(who[j]);
            }
        }
        const coset::CosetCode::Decoder decoder(code, sub_index);
        const std::size_t block = piece_block_size(params, piece);
        std::vector<Symbol> values(sub_index.size());
        std::size_t remaining = piece.message_symbols;
        for (std::size_t b = 0; b < piece.blocks; ++b) {
            for (std::size_t i = 0; i < encoder_of.size(); ++i) values[i] = (*have[encoder_of[i]])[cursor[encoder_of[i]] + b];
            const auto out = decoder.decode(values);
            const std::size_t take = std::min(block, remaining);
            message.insert(message.end(), out.begin(), out.begin() + static_cast<std::ptrdiff_t>(take));
            remaining -= take;
            for (std::size_t i = take; i < block; ++i) {
                if (out[i] != 0) throw DecodeError("nonzero block padding in decoded message");
            }
        }
        for (std::size_t l : who) cursor[l] += piece.blocks;
    }
    return message;
}

}  // namespace smdc::ssdc
