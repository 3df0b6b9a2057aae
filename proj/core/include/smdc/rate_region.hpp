// SPDX-License-Identifier: Apache-2.0
//
// Exact polyhedral computations on rate regions.
//
// R(L, k, H) is the set of nonnegative L-tuples whose every k-subset sums
// to at least H. For a single-source problem with parameters (L, N, m) the
// admissible region is R(L, m - N, H(S)); the multilevel superposition
// region is the Minkowski sum of R(L, k, H_k) over k = 1..L-N.
//
// Encoder indices are 0-based throughout.
#pragma once

#include "smdc/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace smdc::region {

struct RateTuple {
    std::vector<Rational> entries;

    RateTuple() = default;
    explicit RateTuple(std::vector<Rational> e) : entries(std::move(e)) {}
    RateTuple(std::initializer_list<Rational> e) : entries(e) {}

    std::size_t size() const { return entries.size(); }
    const Rational& operator[](std::size_t i) const { return entries[i]; }
    Rational& operator[](std::size_t i) { return entries[i]; }
    Rational sum() const;

    friend bool operator==(const RateTuple&, const RateTuple&) = default;
    friend bool operator<(const RateTuple& a, const RateTuple& b) { return a.entries < b.entries; }
};

/// coeffs . x >= rhs
struct Constraint {
    std::vector<Rational> coeffs;
    Rational rhs;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// A list of >= constraints, plus implicit x >= 0 when `nonnegative` is set.
struct InequalitySystem {
    std::size_t dimension = 0;
    std::vector<Constraint> rows;
    bool nonnegative = true;

    /// True when some row reads 0 >= c with c > 0.
    bool marked_infeasible() const;

    friend bool operator==(const InequalitySystem&, const InequalitySystem&) = default;
};

/// One row per k-subset D (lexicographic order): sum_{l in D} R_l >= H.
/// Throws InvalidParameterError unless 1 <= k <= L and H >= 0.
InequalitySystem region(std::size_t L, std::size_t k, const Rational& H);

struct Membership {
    bool inside = true;
    std::optional<std::size_t> violated_row;
    /// Support of the violated row, or the negative coordinate.
    std::vector<std::size_t> witness;
};

/// Throws InvalidParameterError on a dimension mismatch.
Membership contains(const InequalitySystem& sys, const RateTuple& tuple);

/// Closed form (L / k) H.
Rational min_sum_rate(std::size_t L, std::size_t k, const Rational& H);

/// minimize sum x over the system by exact LP; nullopt when infeasible.
std::optional<Rational> lp_min_sum(const InequalitySystem& sys);

/// Vertices of R(L, k, H) by the zero-set recursion: tuples with z zeros and
/// H/(k-z) elsewhere, z <= k-1, keeping those that are extreme points.
/// Sorted ascending.
std::vector<RateTuple> corner_points(std::size_t L, std::size_t k, const Rational& H);

/// Generic vertex enumeration: every choice of `dimension` constraints
/// (nonnegativity included) whose tight set has full rank and whose unique
/// solution is feasible. Sorted ascending, without duplicates.
std::vector<RateTuple> enumerate_vertices(const InequalitySystem& sys);

/// Integer coefficients, gcd-normalized rows, trivially true rows dropped,
/// duplicates removed, sorted. An infeasible system becomes the single
/// row 0 >= 1.
InequalitySystem canonicalize(const InequalitySystem& sys);

/// Drops rows implied by a single other row (under x >= 0 when the system is
/// nonnegative) and then rows implied by all others, decided by exact LP.
/// Result is canonical.
InequalitySystem prune_redundant(const InequalitySystem& sys);

/// The R_l = 0 slice as a system of dimension L - 1, pruned and canonical.
InequalitySystem slice(const InequalitySystem& sys, std::size_t l);

struct EliminationOptions {
    std::size_t max_constraints = 20000;
};

/// Projects out `variables` by Fourier-Motzkin elimination with redundancy
/// pruning after every step. Remaining variables keep their relative order.
/// Throws ResourceError when an intermediate system exceeds the budget.
InequalitySystem fm_eliminate(const InequalitySystem& sys, std::span<const std::size_t> variables,
                              const EliminationOptions& options = {});

/// Superposition region in (R_1..R_L) for entropies H_1..H_{L-N}:
/// R_l = sum_k R_l^(k) with (R_1^(k)..R_L^(k)) in R(L, k, H_k).
InequalitySystem superposition_region(std::size_t L, std::size_t N, std::span<const Rational> entropies,
                                      const EliminationOptions& options = {});

/// The same projection with the entropies kept as variables: a homogeneous
/// system over (R_1..R_L, H_1..H_{L-N}), all nonnegative.
InequalitySystem superposition_region_symbolic(std::size_t L, std::size_t N,
                                               const EliminationOptions& options = {});

/// sum_{k=1}^{L-N} (L / k) H_k.
Rational smdc_min_sum_rate(std::size_t L, std::size_t N, std::span<const Rational> entropies);

/// Weights over `vertices` plus a nonnegative remainder expressing `target`
/// as a convex combination of vertices plus a cone direction. Among all
/// such decompositions the remainder's total is minimal.
struct Decomposition {
    std::vector<Rational> weights;  // parallel to vertices, sums to 1
    RateTuple remainder;            // target - sum weights * vertices, >= 0
};
std::optional<Decomposition> decompose(std::span<const RateTuple> vertices, const RateTuple& target);

/// Every k-subset of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

std::string to_string(const Constraint& c, std::span<const std::string> names = {});

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const RateTuple& t);
nlohmann::json to_json(const InequalitySystem& sys);
Rational rational_from_json(const nlohmann::json& j);
RateTuple rate_tuple_from_json(const nlohmann::json& j);
InequalitySystem system_from_json(const nlohmann::json& j);

}  // namespace smdc::region
