// SPDX-License-Identifier: Apache-2.0
//
// Multilevel (L, N) secure diversity coding by superposition: source k of
// L - N is coded on its own by an (L, N, N + k) single-level code, and each
// encoder's output is the concatenation of its per-source sub-payloads.
// Any N + k outputs recover sources 1..k; any N outputs reveal nothing
// about any source.
#pragma once

#include "smdc/entropy.hpp"
#include "smdc/rate_region.hpp"
#include "smdc/ssdc.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace smdc::multilevel {

struct Params {
    std::size_t L = 0;
    std::size_t N = 0;
    Field field = Field::gf(5);
    std::vector<std::size_t> source_lengths;  // symbols of S_1..S_{L-N}

    std::size_t source_count() const { return L - N; }
    /// Single-level parameters used for source k (1-based): (L, N, N + k).
    ssdc::Params level(std::size_t k) const;
    void validate() const;
};

/// Public framing: one single-level layout per source.
struct Layout {
    Params params;
    std::vector<ssdc::Layout> sources;

    /// Length of X_l, all sub-payloads together.
    std::size_t payload_length(std::size_t encoder) const;
};

struct ShareBundle {
    Layout layout;
    std::vector<ssdc::ShareBundle> per_source;

    /// X_l = (X_l^(1), ..., X_l^(L-N)).
    std::vector<Symbol> payload(std::size_t encoder) const;
    std::vector<ssdc::EncoderPayload> select(std::span<const std::size_t> encoders) const;
};

/// Every source at its symmetric point.
Layout plan(const Params& params);

/// Per-source rate assignments, each checked against R(L, k, 1).
Layout plan_at_rates(const Params& params, std::span<const ssdc::RateAssignment> rates);

/// Source k draws its keys from entropy.fork(k).
ShareBundle encode(const Layout& layout, std::span<const std::vector<Symbol>> sources, EntropySource& entropy);
ShareBundle encode(const Params& params, std::span<const std::vector<Symbol>> sources, EntropySource& entropy);
ShareBundle encode_at_rates(const Params& params, std::span<const std::vector<Symbol>> sources,
                            std::span<const ssdc::RateAssignment> rates, EntropySource& entropy);

/// Returns S_1..S_{|U|-N} from the payloads of a set U of encoders.
/// Throws InsufficientSharesError when |U| <= N.
std::vector<std::vector<Symbol>> decode(const Layout& layout, std::span<const ssdc::EncoderPayload> observed);

/// Emitted symbols per encoder divided by `normalization`.
region::RateTuple rate_of(const ShareBundle& bundle, const Rational& normalization = 1);
region::RateTuple rate_of(const Layout& layout, const Rational& normalization = 1);

}  // namespace smdc::multilevel
