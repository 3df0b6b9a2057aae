// SPDX-License-Identifier: Apache-2.0
#include "smdc/lp.hpp"

#include "smdc/errors.hpp"

#include <optional>

namespace smdc::lp {

namespace {

struct Tableau {
    std::vector<std::vector<Rational>> cells;  // rows x (cols + 1), rhs last
    std::vector<std::size_t> basis;
    std::size_t cols = 0;

    const Rational& rhs(std::size_t r) const { return cells[r][cols]; }

    void pivot(std::size_t r, std::size_t c) {
        auto& prow = cells[r];
        const Rational scale = prow[c];
        for (auto& v : prow) v /= scale;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == r || cells[i][c] == 0) continue;
            const Rational factor = cells[i][c];
            for (std::size_t j = 0; j <= cols; ++j) {
                if (prow[j] != 0) cells[i][j] -= factor * prow[j];
            }
        }
        basis[r] = c;
    }
};

enum class Outcome { optimal, unbounded };

// Bland's rule: smallest improving column enters, ties in the ratio test
// leave by smallest basic index. Terminates without cycling.
Outcome run(Tableau& t, const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
        std::optional<std::size_t> entering;
        for (std::size_t j = 0; j < t.cols && !entering; ++j) {
            if (!allowed[j]) continue;
            Rational reduced = cost[j];
            for (std::size_t i = 0; i < t.cells.size(); ++i) {
                if (t.cells[i][j] != 0) reduced -= cost[t.basis[i]] * t.cells[i][j];
            }
            if (reduced < 0) entering = j;
        }
        if (!entering) return Outcome::optimal;
        const std::size_t c = *entering;
        std::optional<std::size_t> leaving;
        Rational best;
        for (std::size_t i = 0; i < t.cells.size(); ++i) {
            if (t.cells[i][c] <= 0) continue;
            const Rational ratio = t.rhs(i) / t.cells[i][c];
            if (!leaving || ratio < best || (ratio == best && t.basis[i] < t.basis[*leaving])) {
                leaving = i;
                best = ratio;
            }
        }
        if (!leaving) return Outcome::unbounded;
        t.pivot(*leaving, c);
    }
}

}  // namespace

Solution minimize(const Problem& problem) {
    const std::size_t n = problem.variables;
    if (problem.objective.size() != n) throw InvalidParameterError("lp objective has wrong dimension");
    for (const auto& row : problem.rows) {
        if (row.coeffs.size() != n) throw InvalidParameterError("lp row has wrong dimension");
    }

    // Normalize to nonnegative right-hand sides.
    std::vector<Row> rows = problem.rows;
    for (auto& row : rows) {
        if (row.rhs < 0) {
            for (auto& c : row.coeffs) c = -c;
            row.rhs = -row.rhs;
            if (row.relation == Relation::greater_equal)
                row.relation = Relation::less_equal;
            else if (row.relation == Relation::less_equal)
                row.relation = Relation::greater_equal;
        }
    }

    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    for (const auto& row : rows) {
        if (row.relation != Relation::equal) ++slack_count;
        if (row.relation != Relation::less_equal) ++artificial_count;
    }
    const std::size_t first_artificial = n + slack_count;
    Tableau t;
    t.cols = first_artificial + artificial_count;
    t.cells.assign(rows.size(), std::vector<Rational>(t.cols + 1));
    t.basis.assign(rows.size(), 0);
    std::size_t slack = n;
    std::size_t artificial = first_artificial;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& cells = t.cells[i];
        for (std::size_t j = 0; j < n; ++j) cells[j] = rows[i].coeffs[j];
        cells[t.cols] = rows[i].rhs;
        switch (rows[i].relation) {
            case Relation::less_equal:
                cells[slack] = 1;
                t.basis[i] = slack++;
                break;
            case Relation::greater_equal:
                cells[slack++] = -1;
                cells[artificial] = 1;
                t.basis[i] = artificial++;
                break;
            case Relation::equal:
                cells[artificial] = 1;
                t.basis[i] = artificial++;
                break;
        }
    }

    // Phase 1: drive the artificials to zero.
    std::vector<Rational> phase1(t.cols, 0);
    for (std::size_t j = first_artificial; j < t.cols; ++j) phase1[j] = 1;
    std::vector<bool> allowed(t.cols, true);
    run(t, phase1, allowed);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        if (t.basis[i] >= first_artificial) infeasibility += t.rhs(i);
    }
    Solution solution;
    if (infeasibility > 0) {
        solution.status = Status::infeasible;
        return solution;
    }
    // Pivot remaining zero-level artificials out of the basis, dropping rows
    // that turn out to be linearly dependent.
    for (std::size_t i = 0; i < t.cells.size();) {
        if (t.basis[i] < first_artificial) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < first_artificial && !col; ++j) {
            if (t.cells[i][j] != 0) col = j;
        }
        if (col) {
            t.pivot(i, *col);
            ++i;
        } else {
            t.cells.erase(t.cells.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase 2.
    std::vector<Rational> phase2(t.cols, 0);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = problem.objective[j];
    for (std::size_t j = first_artificial; j < t.cols; ++j) allowed[j] = false;
    if (run(t, phase2, allowed) == Outcome::unbounded) {
        solution.status = Status::unbounded;
        return solution;
    }
    solution.status = Status::optimal;
    solution.x.assign(n, 0);
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        if (t.basis[i] < n) solution.x[t.basis[i]] = t.rhs(i);
    }
    solution.value = 0;
    for (std::size_t j = 0; j < n; ++j) solution.value += problem.objective[j] * solution.x[j];
    return solution;
}

}  // namespace smdc::lp
