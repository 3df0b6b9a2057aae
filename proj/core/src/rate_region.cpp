// SPDX-License-Identifier: Apache-2.0
#include "smdc/rate_region.hpp"

#include "smdc/errors.hpp"
#include "smdc/lp.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace smdc::region {

namespace {

bool all_zero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

Constraint unit_row(std::size_t dim, std::size_t j) {
    Constraint c{std::vector<Rational>(dim, 0), 0};
    c.coeffs[j] = 1;
    return c;
}

InequalitySystem infeasible_system(std::size_t dim, bool nonnegative) {
    return {dim, {Constraint{std::vector<Rational>(dim, 0), 1}}, nonnegative};
}

// Scales a row to coprime integers (positive scale only).
Constraint normalize_row(const Constraint& row) {
    BigInt den = 1;
    for (const auto& c : row.coeffs) den = lcm(den, boost::multiprecision::denominator(c));
    den = lcm(den, boost::multiprecision::denominator(row.rhs));
    Constraint out = row;
    BigInt g = 0;
    for (auto& c : out.coeffs) {
        c *= den;
        g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(c));
    }
    out.rhs *= den;
    g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(out.rhs));
    if (g > 1) {
        for (auto& c : out.coeffs) c /= g;
        out.rhs /= g;
    }
    return out;
}

bool row_less(const Constraint& a, const Constraint& b) {
    if (a.coeffs != b.coeffs) return a.coeffs > b.coeffs;  // larger leading coefficients first
    return a.rhs < b.rhs;
}

// LP over a system, splitting free variables when the system is not
// nonnegative. `skip` excludes one row.
lp::Solution optimize(const InequalitySystem& sys, const std::vector<Rational>& objective,
                      std::optional<std::size_t> skip = std::nullopt) {
    const std::size_t n = sys.dimension;
    const bool split = !sys.nonnegative;
    lp::Problem problem;
    problem.variables = split ? 2 * n : n;
    problem.objective.assign(problem.variables, 0);
    for (std::size_t j = 0; j < n; ++j) {
        problem.objective[j] = objective[j];
        if (split) problem.objective[n + j] = -objective[j];
    }
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        if (skip && *skip == i) continue;
        lp::Row row;
        row.coeffs.assign(problem.variables, 0);
        for (std::size_t j = 0; j < n; ++j) {
            row.coeffs[j] = sys.rows[i].coeffs[j];
            if (split) row.coeffs[n + j] = -sys.rows[i].coeffs[j];
        }
        row.relation = lp::Relation::greater_equal;
        row.rhs = sys.rows[i].rhs;
        problem.rows.push_back(std::move(row));
    }
    lp::Solution s = lp::minimize(problem);
    if (split && s.status == lp::Status::optimal) {
        std::vector<Rational> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = s.x[j] - s.x[n + j];
        s.x = std::move(x);
    }
    return s;
}

// Row c implies row a (under x >= 0 if nonnegative): a >= c componentwise
// and a.rhs <= c.rhs.
bool dominates(const Constraint& c, const Constraint& a, bool nonnegative) {
    if (a.rhs > c.rhs) return false;
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
        if (nonnegative ? a.coeffs[j] < c.coeffs[j] : a.coeffs[j] != c.coeffs[j]) return false;
    }
    return true;
}

std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

double binomial_estimate(std::size_t n, std::size_t k) {
    double r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

}  // namespace

Rational RateTuple::sum() const {
    Rational s = 0;
    for (const auto& e : entries) s += e;
    return s;
}

bool InequalitySystem::marked_infeasible() const {
    return std::any_of(rows.begin(), rows.end(), [](const Constraint& c) { return all_zero(c.coeffs) && c.rhs > 0; });
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

InequalitySystem region(std::size_t L, std::size_t k, const Rational& H) {
    if (k < 1 || k > L)
        throw InvalidParameterError("region requires 1 <= k <= L, got L=" + std::to_string(L) +
                                    " k=" + std::to_string(k));
    if (H < 0) throw InvalidParameterError("region requires H >= 0");
    InequalitySystem sys{L, {}, true};
    for (const auto& d : subsets(L, k)) {
        Constraint c{std::vector<Rational>(L, 0), H};
        for (std::size_t l : d) c.coeffs[l] = 1;
        sys.rows.push_back(std::move(c));
    }
    return sys;
}

Membership contains(const InequalitySystem& sys, const RateTuple& tuple) {
    if (tuple.size() != sys.dimension)
        throw InvalidParameterError("rate tuple has dimension " + std::to_string(tuple.size()) + ", region has " +
                                    std::to_string(sys.dimension));
    Membership m;
    if (sys.nonnegative) {
        for (std::size_t l = 0; l < tuple.size(); ++l) {
            if (tuple[l] < 0) {
                m.inside = false;
                m.witness = {l};
                return m;
            }
        }
    }
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const auto& row = sys.rows[i];
        Rational lhs = 0;
        for (std::size_t l = 0; l < tuple.size(); ++l) lhs += row.coeffs[l] * tuple[l];
        if (lhs < row.rhs) {
            m.inside = false;
            m.violated_row = i;
            for (std::size_t l = 0; l < row.coeffs.size(); ++l) {
                if (row.coeffs[l] != 0) m.witness.push_back(l);
            }
            return m;
        }
    }
    return m;
}

Rational min_sum_rate(std::size_t L, std::size_t k, const Rational& H) {
    if (k < 1 || k > L) throw InvalidParameterError("min_sum_rate requires 1 <= k <= L");
    return Rational(static_cast<long long>(L), static_cast<long long>(k)) * H;
}

std::optional<Rational> lp_min_sum(const InequalitySystem& sys) {
    const lp::Solution s = optimize(sys, std::vector<Rational>(sys.dimension, 1));
    if (s.status == lp::Status::infeasible) return std::nullopt;
    if (s.status == lp::Status::unbounded) throw InvalidParameterError("sum rate is unbounded below");
    return s.value;
}

std::vector<RateTuple> corner_points(std::size_t L, std::size_t k, const Rational& H) {
    if (k < 1 || k > L) throw InvalidParameterError("corner_points requires 1 <= k <= L");
    if (H < 0) throw InvalidParameterError("corner_points requires H >= 0");
    if (H == 0) return {RateTuple(std::vector<Rational>(L, 0))};
    std::vector<RateTuple> out;
    for (std::size_t z = 0; z < k; ++z) {
        const std::size_t rest = L - z;
        const std::size_t need = k - z;
        // The symmetric point of R(rest, need, H) is extreme only when the
        // need-subset constraints have full rank.
        if (!(need < rest || rest == 1)) continue;
        const Rational value = H / static_cast<long long>(need);
        for (const auto& zeros : subsets(L, z)) {
            RateTuple t(std::vector<Rational>(L, value));
            for (std::size_t l : zeros) t[l] = 0;
            out.push_back(std::move(t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RateTuple> enumerate_vertices(const InequalitySystem& sys) {
    const std::size_t n = sys.dimension;
    if (sys.marked_infeasible()) return {};
    std::vector<Constraint> all = sys.rows;
    if (sys.nonnegative) {
        for (std::size_t j = 0; j < n; ++j) all.push_back(unit_row(n, j));
    }
    if (binomial_estimate(all.size(), n) > 5e6)
        throw ResourceError("vertex enumeration over " + std::to_string(all.size()) + " constraints is too large");
    std::set<RateTuple> found;
    for (const auto& pick : subsets(all.size(), n)) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t i : pick) {
            a.push_back(all[i].coeffs);
            b.push_back(all[i].rhs);
        }
        auto x = solve_rational(std::move(a), std::move(b));
        if (!x) continue;
        RateTuple t(std::move(*x));
        bool feasible = true;
        for (const auto& c : all) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < n; ++j) lhs += c.coeffs[j] * t[j];
            if (lhs < c.rhs) {
                feasible = false;
                break;
            }
        }
        if (feasible) found.insert(std::move(t));
    }
    return {found.begin(), found.end()};
}

InequalitySystem canonicalize(const InequalitySystem& sys) {
    if (sys.marked_infeasible()) return infeasible_system(sys.dimension, sys.nonnegative);
    std::vector<Constraint> rows;
    for (const auto& r : sys.rows) {
        if (r.coeffs.size() != sys.dimension) throw InvalidParameterError("constraint has wrong dimension");
        Constraint c = normalize_row(r);
        if (c.rhs <= 0) {
            if (all_zero(c.coeffs)) continue;
            if (sys.nonnegative &&
                std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& v) { return v >= 0; }))
                continue;
        }
        rows.push_back(std::move(c));
    }
    std::sort(rows.begin(), rows.end(), row_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return {sys.dimension, std::move(rows), sys.nonnegative};
}

InequalitySystem prune_redundant(const InequalitySystem& sys) {
    InequalitySystem c = canonicalize(sys);
    if (c.marked_infeasible()) return c;
    if (optimize(c, std::vector<Rational>(c.dimension, 0)).status == lp::Status::infeasible)
        return infeasible_system(c.dimension, c.nonnegative);

    std::vector<Constraint> kept;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        bool implied = false;
        for (std::size_t j = 0; j < c.rows.size() && !implied; ++j) {
            if (i != j && dominates(c.rows[j], c.rows[i], c.nonnegative)) implied = true;
        }
        if (!implied) kept.push_back(c.rows[i]);
    }
    c.rows = std::move(kept);

    for (std::size_t i = 0; i < c.rows.size();) {
        const lp::Solution s = optimize(c, c.rows[i].coeffs, i);
        if (s.status == lp::Status::optimal && s.value >= c.rows[i].rhs) {
            c.rows.erase(c.rows.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return c;
}

InequalitySystem slice(const InequalitySystem& sys, std::size_t l) {
    if (l >= sys.dimension) throw InvalidParameterError("slice index out of range");
    InequalitySystem out{sys.dimension - 1, {}, sys.nonnegative};
    for (const auto& r : sys.rows) {
        Constraint c{{}, r.rhs};
        for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
            if (j != l) c.coeffs.push_back(r.coeffs[j]);
        }
        out.rows.push_back(std::move(c));
    }
    return prune_redundant(out);
}

InequalitySystem fm_eliminate(const InequalitySystem& sys, std::span<const std::size_t> variables,
                              const EliminationOptions& options) {
    const std::size_t n = sys.dimension;
    std::set<std::size_t> pending(variables.begin(), variables.end());
    for (std::size_t v : pending) {
        if (v >= n) throw InvalidParameterError("elimination variable out of range");
    }
    InequalitySystem work = prune_redundant(sys);

    while (!pending.empty() && !work.marked_infeasible()) {
        // Eliminate the variable producing the fewest combinations next.
        std::size_t best = *pending.begin();
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t v : pending) {
            std::size_t pos = sys.nonnegative ? 1 : 0, neg = 0;
            for (const auto& r : work.rows) {
                if (r.coeffs[v] > 0) ++pos;
                if (r.coeffs[v] < 0) ++neg;
            }
            if (pos * neg < best_cost) {
                best_cost = pos * neg;
                best = v;
            }
        }
        pending.erase(best);

        // Canonical rows leave x >= 0 implicit; the eliminated variable's
        // bound has to take part in the combinations.
        std::vector<Constraint> positive, negative, next;
        if (sys.nonnegative) positive.push_back(unit_row(n, best));
        for (auto& r : work.rows) {
            if (r.coeffs[best] > 0)
                positive.push_back(std::move(r));
            else if (r.coeffs[best] < 0)
                negative.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        if (next.size() + positive.size() * negative.size() > options.max_constraints)
            throw ResourceError("Fourier-Motzkin step would produce " +
                                std::to_string(next.size() + positive.size() * negative.size()) +
                                " constraints, budget is " + std::to_string(options.max_constraints));
        for (const auto& p : positive) {
            for (const auto& q : negative) {
                const Rational a = p.coeffs[best];
                const Rational b = -q.coeffs[best];
                Constraint c{std::vector<Rational>(n), b * p.rhs + a * q.rhs};
                for (std::size_t j = 0; j < n; ++j) c.coeffs[j] = b * p.coeffs[j] + a * q.coeffs[j];
                c.coeffs[best] = 0;
                next.push_back(std::move(c));
            }
        }
        work.rows = std::move(next);
        work = prune_redundant(work);
    }

    InequalitySystem out{n - std::set<std::size_t>(variables.begin(), variables.end()).size(), {}, sys.nonnegative};
    if (work.marked_infeasible()) return infeasible_system(out.dimension, out.nonnegative);
    const std::set<std::size_t> removed(variables.begin(), variables.end());
    for (const auto& r : work.rows) {
        Constraint c{{}, r.rhs};
        for (std::size_t j = 0; j < n; ++j) {
            if (!removed.count(j)) c.coeffs.push_back(r.coeffs[j]);
        }
        out.rows.push_back(std::move(c));
    }
    return prune_redundant(out);
}

namespace {

// Builds the lifted superposition system. Column layout: R_0..R_{L-1},
// then `params` extra columns (the entropies in symbolic mode), then
// R^(k)_l for k = 2..K at params_end + (k-2)L + l. R^(1) is substituted
// away through R^(1)_l = R_l - sum_{k>=2} R^(k)_l.
InequalitySystem lifted_superposition(std::size_t L, std::size_t K, std::span<const Rational> entropies,
                                      bool symbolic, std::vector<std::size_t>& aux) {
    const std::size_t params = symbolic ? K : 0;
    const std::size_t first_aux = L + params;
    const std::size_t dim = first_aux + (K - 1) * L;
    auto aux_col = [&](std::size_t k, std::size_t l) { return first_aux + (k - 2) * L + l; };
    InequalitySystem sys{dim, {}, true};
    for (std::size_t k = 1; k <= K; ++k) {
        for (const auto& d : subsets(L, k)) {
            Constraint c{std::vector<Rational>(dim, 0), 0};
            for (std::size_t l : d) {
                if (k == 1) {
                    c.coeffs[l] += 1;
                    for (std::size_t kk = 2; kk <= K; ++kk) c.coeffs[aux_col(kk, l)] -= 1;
                } else {
                    c.coeffs[aux_col(k, l)] += 1;
                }
            }
            if (symbolic)
                c.coeffs[L + k - 1] = -1;
            else
                c.rhs = entropies[k - 1];
            sys.rows.push_back(std::move(c));
        }
    }
    // Nonnegativity of the substituted R^(1)_l.
    for (std::size_t l = 0; l < L; ++l) {
        Constraint c{std::vector<Rational>(dim, 0), 0};
        c.coeffs[l] = 1;
        for (std::size_t kk = 2; kk <= K; ++kk) c.coeffs[aux_col(kk, l)] = -1;
        sys.rows.push_back(std::move(c));
    }
    aux.clear();
    for (std::size_t j = first_aux; j < dim; ++j) aux.push_back(j);
    return sys;
}

}  // namespace

InequalitySystem superposition_region(std::size_t L, std::size_t N, std::span<const Rational> entropies,
                                      const EliminationOptions& options) {
    if (N >= L) throw InvalidParameterError("superposition region requires N < L");
    const std::size_t K = L - N;
    if (entropies.size() != K)
        throw InvalidParameterError("expected " + std::to_string(K) + " source entropies, got " +
                                    std::to_string(entropies.size()));
    for (const auto& h : entropies) {
        if (h < 0) throw InvalidParameterError("source entropies must be nonnegative");
    }
    std::vector<std::size_t> aux;
    const InequalitySystem lifted = lifted_superposition(L, K, entropies, false, aux);
    return fm_eliminate(lifted, aux, options);
}

InequalitySystem superposition_region_symbolic(std::size_t L, std::size_t N, const EliminationOptions& options) {
    if (N >= L) throw InvalidParameterError("superposition region requires N < L");
    std::vector<std::size_t> aux;
    const InequalitySystem lifted = lifted_superposition(L, L - N, {}, true, aux);
    return fm_eliminate(lifted, aux, options);
}

Rational smdc_min_sum_rate(std::size_t L, std::size_t N, std::span<const Rational> entropies) {
    if (N >= L) throw InvalidParameterError("smdc_min_sum_rate requires N < L");
    if (entropies.size() != L - N) throw InvalidParameterError("expected L - N source entropies");
    Rational total = 0;
    for (std::size_t k = 1; k <= entropies.size(); ++k)
        total += Rational(static_cast<long long>(L), static_cast<long long>(k)) * entropies[k - 1];
    return total;
}

std::optional<Decomposition> decompose(std::span<const RateTuple> vertices, const RateTuple& target) {
    const std::size_t L = target.size();
    const std::size_t V = vertices.size();
    if (V == 0) return std::nullopt;
    lp::Problem problem;
    problem.variables = V + L;
    problem.objective.assign(V + L, 0);
    for (std::size_t l = 0; l < L; ++l) problem.objective[V + l] = 1;
    lp::Row convex{std::vector<Rational>(V + L, 0), lp::Relation::equal, 1};
    for (std::size_t i = 0; i < V; ++i) convex.coeffs[i] = 1;
    problem.rows.push_back(std::move(convex));
    for (std::size_t l = 0; l < L; ++l) {
        lp::Row row{std::vector<Rational>(V + L, 0), lp::Relation::equal, target[l]};
        for (std::size_t i = 0; i < V; ++i) {
            if (vertices[i].size() != L) throw InvalidParameterError("vertex dimension mismatch");
            row.coeffs[i] = vertices[i][l];
        }
        row.coeffs[V + l] = 1;
        problem.rows.push_back(std::move(row));
    }
    const lp::Solution s = lp::minimize(problem);
    if (s.status != lp::Status::optimal) return std::nullopt;
    Decomposition d;
    d.weights.assign(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(V));
    d.remainder = RateTuple(std::vector<Rational>(s.x.begin() + static_cast<std::ptrdiff_t>(V), s.x.end()));
    return d;
}

std::string to_string(const Constraint& c, std::span<const std::string> names) {
    std::string out;
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
        const Rational& a = c.coeffs[j];
        if (a == 0) continue;
        const std::string name = j < names.size() ? names[j] : "x" + std::to_string(j + 1);
        const Rational mag = a < 0 ? Rational(-a) : a;
        if (out.empty())
            out += a < 0 ? "-" : "";
        else
            out += a < 0 ? " - " : " + ";
        if (mag != 1) out += smdc::to_string(mag) + " ";
        out += name;
    }
    if (out.empty()) out = "0";
    return out + " >= " + smdc::to_string(c.rhs);
}

namespace {

nlohmann::json bigint_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw FormatError("expected an integer in rational JSON");
}

}  // namespace

nlohmann::json to_json(const Rational& r) {
    return nlohmann::json::array(
        {bigint_json(boost::multiprecision::numerator(r)), bigint_json(boost::multiprecision::denominator(r))});
}

nlohmann::json to_json(const RateTuple& t) {
    auto j = nlohmann::json::array();
    for (const auto& e : t.entries) j.push_back(to_json(e));
    return j;
}

nlohmann::json to_json(const InequalitySystem& sys) {
    nlohmann::json j;
    j["dimension"] = sys.dimension;
    j["nonnegative"] = sys.nonnegative;
    j["infeasible"] = sys.marked_infeasible();
    auto rows = nlohmann::json::array();
    for (const auto& r : sys.rows) {
        nlohmann::json row;
        auto coeffs = nlohmann::json::array();
        for (const auto& c : r.coeffs) coeffs.push_back(to_json(c));
        row["coeffs"] = std::move(coeffs);
        row["rhs"] = to_json(r.rhs);
        rows.push_back(std::move(row));
    }
    j["constraints"] = std::move(rows);
    return j;
}

Rational rational_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("rational must be a [numerator, denominator] pair");
    const BigInt den = bigint_from_json(j[1]);
    if (den <= 0) throw FormatError("rational denominator must be positive");
    return Rational(bigint_from_json(j[0]), den);
}

RateTuple rate_tuple_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("rate tuple must be an array");
    RateTuple t;
    for (const auto& e : j) t.entries.push_back(rational_from_json(e));
    return t;
}

InequalitySystem system_from_json(const nlohmann::json& j) {
    InequalitySystem sys;
    try {
        sys.dimension = j.at("dimension").get<std::size_t>();
        sys.nonnegative = j.at("nonnegative").get<bool>();
        for (const auto& row : j.at("constraints")) {
            Constraint c;
            for (const auto& coeff : row.at("coeffs")) c.coeffs.push_back(rational_from_json(coeff));
            if (c.coeffs.size() != sys.dimension) throw FormatError("constraint has wrong dimension");
            c.rhs = rational_from_json(row.at("rhs"));
            sys.rows.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed inequality system: ") + e.what());
    }
    return sys;
}

}  // namespace smdc::region
