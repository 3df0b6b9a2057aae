// SPDX-License-Identifier: Apache-2.0
//
// Dense two-phase simplex over exact rationals with Bland's rule. Sized for
// the small systems of the rate-region engine, not for large LPs.
#pragma once

#include "smdc/rational.hpp"

#include <vector>

namespace smdc::lp {

enum class Relation { greater_equal, less_equal, equal };

struct Row {
    std::vector<Rational> coeffs;
    Relation relation = Relation::greater_equal;
    Rational rhs;
};

/// minimize objective . x subject to rows, x >= 0.
struct Problem {
    std::size_t variables = 0;
    std::vector<Row> rows;
    std::vector<Rational> objective;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    Rational value;
    std::vector<Rational> x;
};

Solution minimize(const Problem& problem);

}  // namespace smdc::lp
