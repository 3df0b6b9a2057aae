// SPDX-License-Identifier: Apache-2.0
//
// Single-source secure diversity coding with parameters (L, N, m): any m
// encoder outputs recover the message, any N reveal nothing about it.
//
// Rates are counted in encoder symbols per message symbol, so the message
// entropy is normalized to one symbol and the admissible rates are
// R(L, m - N, 1). A tuple is realized as a mix of corner points (each a
// symmetric coset code over the encoders outside a zero set) plus zero
// padding up to the declared rate.
#pragma once

#include "smdc/entropy.hpp"
#include "smdc/finite_field.hpp"
#include "smdc/rate_region.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace smdc::ssdc {

struct Params {
    std::size_t L = 0;
    std::size_t N = 0;
    std::size_t m = 0;
    Field field = Field::gf(5);

    /// Message symbols per block at the symmetric point, m - N.
    std::size_t k() const { return m - N; }
    /// Throws InvalidParameterError unless 0 <= N < m <= L and the field has
    /// L distinct nonzero nodes.
    void validate() const;
};

struct RateAssignment {
    std::vector<Rational> per_encoder_symbols;
};

/// A share of the message coded at one corner point: the encoders in
/// `zero_set` emit nothing, the others run the symmetric code of the
/// (L - |Z|, N, m - |Z|) problem.
struct Piece {
    std::vector<std::size_t> zero_set;
    std::size_t message_symbols = 0;
    std::size_t blocks = 0;

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Public framing: everything a decoder needs besides the payloads. It is
/// a function of the parameters, rates and message length only.
struct Layout {
    Params params;
    std::size_t message_length = 0;
    std::vector<Piece> pieces;
    std::vector<std::size_t> payload_lengths;  // per encoder, padding included

    std::size_t block_count() const;
    /// Symbols per encoder produced by the pieces, before padding.
    std::vector<std::size_t> coded_lengths() const;
};

struct EncoderPayload {
    std::size_t encoder = 0;
    std::vector<Symbol> symbols;
};

struct ShareBundle {
    Layout layout;
    std::vector<std::vector<Symbol>> payloads;

    /// Payloads of the given encoders, in the order given.
    std::vector<EncoderPayload> select(std::span<const std::size_t> encoders) const;
};

/// Layout of the symmetric point: one piece, every encoder holds one symbol
/// per block of k message symbols.
Layout plan_symmetric(const Params& params, std::size_t message_length);

/// Throws InfeasibleCornerError when |zero_set| >= m - N.
Layout plan_corner(const Params& params, std::size_t message_length, std::span<const std::size_t> zero_set);

/// Throws RegionViolationError naming the violated subset when the rates
/// fall outside R(L, m - N, 1).
Layout plan_at_rate(const Params& params, std::size_t message_length, const RateAssignment& rates);

/// Encodes against an explicit layout (from one of the plan_* functions).
ShareBundle encode(const Layout& layout, std::span<const Symbol> message, EntropySource& entropy);

ShareBundle encode_symmetric(const Params& params, std::span<const Symbol> message, EntropySource& entropy);
ShareBundle encode_corner(const Params& params, std::span<const Symbol> message,
                          std::span<const std::size_t> zero_set, EntropySource& entropy);
ShareBundle encode_at_rate(const Params& params, std::span<const Symbol> message, const RateAssignment& rates,
                           EntropySource& entropy);

/// Recovers the message from the payloads of at least m distinct encoders.
/// Throws InsufficientSharesError (with the shortfall) or DecodeError.
std::vector<Symbol> decode(const Layout& layout, std::span<const EncoderPayload> observed);

/// Candidate corner points of R(L, m - N, 1) paired with their zero sets,
/// in the deterministic order used for tie-breaking.
struct Corner {
    std::vector<std::size_t> zero_set;
    region::RateTuple rates;
};
std::vector<Corner> corners(const Params& params);

}  // namespace smdc::ssdc
