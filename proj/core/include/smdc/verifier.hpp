// SPDX-License-Identifier: Apache-2.0
//
// Brute-force oracle for small codes. Every source realization and every
// key realization is pushed through the public encoder; the resulting table
// of equally likely outcomes is the exact joint distribution of sources and
// encoder outputs. Secrecy is decided by exact factorization of that table,
// reconstruction by running the public decoder on every outcome.
//
// The verifier never sees keys directly: they enter the encoder only
// through a scripted EntropySource.
#pragma once

#include "smdc/entropy.hpp"
#include "smdc/finite_field.hpp"
#include "smdc/smdc.hpp"
#include "smdc/ssdc.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smdc::verify {

using Sources = std::vector<std::vector<Symbol>>;
using Payloads = std::vector<std::vector<Symbol>>;

/// Public interface of a code under test.
struct CodecInstance {
    std::string description;
    Field field = Field::gf(5);
    std::size_t L = 0;
    std::size_t N = 0;
    std::vector<std::size_t> source_lengths;
    std::vector<std::size_t> payload_lengths;
    /// Nested sources with cumulative access (the converse inequality applies).
    bool multilevel = false;
    /// Sources a receiver holding |U| outputs must recover.
    std::function<std::size_t(std::size_t)> recoverable_sources;
    std::function<Payloads(std::span<const std::vector<Symbol>>, EntropySource&)> encode;
    std::function<Sources(std::span<const ssdc::EncoderPayload>)> decode;

    /// Smallest |U| with recoverable_sources(|U|) > 0.
    std::size_t access_threshold() const;
};

CodecInstance ssdc_instance(const ssdc::Layout& layout);
CodecInstance smdc_instance(const multilevel::Layout& layout);

struct Budget {
    std::uint64_t max_outcomes = 10'000'000;
    std::chrono::milliseconds timeout{std::chrono::minutes(5)};
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Variables of the joint distribution: a set of sources and a set of
/// encoder outputs (0-based indices).
struct Selection {
    std::vector<std::size_t> sources;
    std::vector<std::size_t> encoders;
};

/// Table of distinct outcomes, each with the number of (source, key)
/// realizations producing it. Rows hold the sources in order, then the
/// payload of every encoder in order.
class JointDistribution {
public:
    using Row = std::vector<Symbol>;

    /// Partition of the distinct outcomes by the value of some variables.
    struct Grouping {
        std::vector<std::uint32_t> group;         // per distinct outcome
        std::vector<std::uint64_t> counts;        // per group
        std::vector<std::size_t> representative;  // an outcome of each group
    };

    JointDistribution(Field field, std::size_t L, std::vector<std::size_t> source_lengths,
                      std::vector<std::size_t> payload_lengths, std::size_t key_symbols, std::map<Row, std::uint64_t> counts);

    /// `rows` is a flat table of `width` symbols per row in any order;
    /// duplicates are merged.
    JointDistribution(Field field, std::size_t L, std::vector<std::size_t> source_lengths,
                      std::vector<std::size_t> payload_lengths, std::size_t key_symbols, std::vector<std::uint16_t> rows,
                      std::vector<std::uint64_t> counts);

    const Field& field() const { return field_; }
    std::size_t encoders() const { return payload_offsets_.size(); }
    std::size_t source_count() const { return source_offsets_.size(); }
    std::size_t key_symbols() const { return key_symbols_; }
    /// Number of equally likely (source, key) realizations enumerated.
    std::uint64_t total() const { return total_; }

    std::size_t width() const { return width_; }
    std::size_t distinct() const { return counts_.size(); }
    Row row(std::size_t i) const;
    std::uint64_t count(std::size_t i) const { return counts_[i]; }
    /// All distinct outcomes with their counts, ordered by row.
    std::map<Row, std::uint64_t> outcomes() const;

    Rational probability(const Row& row) const;

    /// Counts of each value of the selected variables.
    std::map<Row, std::uint64_t> marginal(const Selection& selection) const;
    Grouping grouping(const Selection& selection) const;

    Row project(const Row& row, const Selection& selection) const;
    Row project(std::size_t i, const Selection& selection) const;
    Sources sources_of(const Row& row) const;
    std::vector<Symbol> payload_of(const Row& row, std::size_t encoder) const;

    /// Shannon entropy of the selected variables in bits (reporting only).
    double entropy_bits(const Selection& selection) const;

private:
    std::vector<std::size_t> columns(const Selection& selection) const;
    void init(std::size_t L);
    Grouping group_columns(const std::vector<std::size_t>& cols) const;

    Field field_;
    std::vector<std::size_t> source_offsets_;
    std::vector<std::size_t> source_lengths_;
    std::vector<std::size_t> payload_offsets_;
    std::vector<std::size_t> payload_lengths_;
    std::size_t key_symbols_;
    std::size_t width_ = 0;
    std::vector<std::uint16_t> rows_;  // sorted, distinct
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Exhaustive enumeration over uniform sources and uniform keys. Throws
/// BudgetExceededError rather than sampling when q^(symbols) exceeds the
/// budget or the timeout expires.
JointDistribution enumerate(const CodecInstance& codec, const Budget& budget = {});

struct Cell {
    std::vector<Symbol> sources;
    std::vector<Symbol> shares;
    Rational joint;
    Rational source_marginal;
    Rational share_marginal;
};

struct SecrecyVerdict {
    bool holds = true;
    std::optional<Cell> counterexample;
};

/// P(sources, x_A) = P(sources) P(x_A) in every cell, exactly.
SecrecyVerdict check_perfect_secrecy(const JointDistribution& dist, std::span<const std::size_t> tapped);

struct ReconstructionVerdict {
    bool holds = false;
    bool refused = false;  // decoder reported insufficient shares
    std::size_t expected_sources = 0;
    std::uint64_t failures = 0;
    std::optional<std::string> counterexample;
};

/// Decodes every enumerated outcome from the outputs in U and compares with
/// the first recoverable_sources(|U|) sources.
ReconstructionVerdict check_reconstruction(const JointDistribution& dist, const CodecInstance& codec,
                                           std::span<const std::size_t> receiver);

struct EntropyReport {
    double bits = 0;
    /// Target and condition are exactly independent.
    bool independent = false;
};

EntropyReport conditional_entropy(const JointDistribution& dist, const Selection& target, const Selection& given);

struct Prop2Report {
    bool holds = false;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
};

/// Floating tolerance for "slack >= 0" on entropies computed in bits.
inline constexpr double kEntropyTolerance = 1e-12;

/// Checks H(X_D | S_1..S_{k-1}, X_A) >= H(S_k) + H(X_D | S_1..S_k, X_A) for
/// |A| = N, |D| = k, A and D disjoint, k 1-based. Throws
/// InvalidParameterError when the index sets do not qualify.
Prop2Report check_prop2_inequality(const JointDistribution& dist, std::size_t N, std::size_t k,
                                   std::span<const std::size_t> tapped, std::span<const std::size_t> subset);

struct Report {
    bool pass = false;
    nlohmann::json json;
};

/// All secrecy sets |A| <= N, all receiver sets, the |A| = threshold sanity
/// direction, and for multilevel codes every converse-inequality instance.
Report run_all(const CodecInstance& codec, const Budget& budget = {});

}  // namespace smdc::verify
