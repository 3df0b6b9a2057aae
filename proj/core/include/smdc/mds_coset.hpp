// SPDX-License-Identifier: Apache-2.0
//
// [L, m] MDS coset code: a block of m - N message symbols is combined with
// N uniform key symbols through an L x m Vandermonde generator. Any m shares
// determine the block; any N shares are uniformly distributed whatever the
// message is, because every N x N row-submatrix of the key columns is
// nonsingular.
//
// Encoder indices in this API are 0-based.
#pragma once

#include "smdc/entropy.hpp"
#include "smdc/finite_field.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace smdc::coset {

/// One symbol per encoder for a single message block.
struct ShareVector {
    std::vector<Symbol> shares;
};

struct ObservedShare {
    std::size_t encoder;
    Symbol value;
};

class CosetCode {
public:
    /// Requires 0 <= N < m <= L and L distinct nodes (default 1..L).
    CosetCode(Field field, std::size_t L, std::size_t N, std::size_t m);
    CosetCode(Field field, std::size_t L, std::size_t N, std::size_t m, std::vector<Symbol> nodes);

    const Field& field() const { return field_; }
    std::size_t encoders() const { return L_; }
    std::size_t secrecy_threshold() const { return N_; }
    std::size_t reconstruction_threshold() const { return m_; }
    std::size_t message_symbols() const { return m_ - N_; }
    const std::vector<Symbol>& nodes() const { return nodes_; }

    /// Columns 0..N-1 multiply the key, columns N..m-1 the message.
    const Matrix& generator() const { return generator_; }

    ShareVector encode(std::span<const Symbol> message, std::span<const Symbol> key) const;

    /// Uses the first m observations to solve for (key, message) and checks
    /// the rest for consistency. Throws InsufficientSharesError for fewer
    /// than m distinct encoders and DecodeError for inconsistent shares.
    std::vector<Symbol> decode(std::span<const ObservedShare> observed) const;

    /// N uniform key symbols drawn from `entropy`.
    std::vector<Symbol> keygen(EntropySource& entropy) const;

    /// Precomputed decoder for a fixed set of encoders; reused across
    /// blocks when bulk-decoding.
    class Decoder {
    public:
        Decoder(const CosetCode& code, std::span<const std::size_t> encoders);

        /// `values[i]` is the share of encoders[i].
        std::vector<Symbol> decode(std::span<const Symbol> values) const;

    private:
        std::size_t N_;
        std::size_t m_;
        std::vector<std::size_t> encoders_;
        Matrix inverse_;                 // inverse of the first m selected rows
        std::optional<Matrix> checks_;   // rows of the remaining encoders
    };

private:
    Field field_;
    std::size_t L_;
    std::size_t N_;
    std::size_t m_;
    std::vector<Symbol> nodes_;
    Matrix generator_;
};

}  // namespace smdc::coset
