// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.
#include "cli.hpp"
#include "smdc/errors.hpp"
#include "smdc/rate_region.hpp"
#include "smdc/share_file.hpp"
#include "smdc/smdc.hpp"
#include "smdc/ssdc.hpp"
#include "smdc/verifier.hpp"
#include "smdc/wiretap_net.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace smdc;
using region::RateTuple;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Keeps the first failure description.
void fail(Outcome& o, const std::string& what) {
    if (o.pass) o.detail = what;
    o.pass = false;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string key_of(const ssdc::Layout& l) {
    std::ostringstream os;
    os << l.params.L << ',' << l.params.N << ',' << l.params.m << ',' << l.message_length << '|';
    for (const auto& p : l.pieces) {
        os << '[';
        for (auto z : p.zero_set) os << z << ' ';
        os << ':' << p.message_symbols << ':' << p.blocks << ']';
    }
    os << '|';
    for (auto n : l.payload_lengths) os << n << ' ';
    return os.str();
}

// Exhaustive reports shared by criteria 1, 7 and 8.
struct Reports {
    std::vector<std::pair<std::string, nlohmann::json>> single;
    std::vector<std::pair<std::string, nlohmann::json>> multi;
};

Reports reports;

struct Grid {
    std::size_t L, N, m;
};

Outcome criterion1() {
    Outcome o;
    std::size_t points = 0, accepted = 0;
    std::map<std::string, ssdc::Layout> layouts;
    for (const Grid g : {Grid{2, 1, 2}, Grid{3, 1, 2}, Grid{3, 1, 3}, Grid{4, 1, 3}, Grid{4, 2, 3}}) {
        const ssdc::Params p{g.L, g.N, g.m, Field::gf(5)};
        const auto sys = region::region(g.L, p.k(), 1);
        std::vector<int> idx(g.L, 0);
        while (true) {
            std::vector<Rational> r(g.L);
            for (std::size_t l = 0; l < g.L; ++l) r[l] = Rational(idx[l], 4);
            ++points;
            const bool inside = region::contains(sys, RateTuple(r)).inside;
            for (std::size_t M : {1u, 2u}) {
                bool planned = false;
                try {
                    const auto layout = ssdc::plan_at_rate(p, M, {r});
                    planned = true;
                    layouts.emplace(key_of(layout), layout);
                } catch (const RegionViolationError&) {
                }
                if (planned != inside) fail(o, "acceptance disagrees with membership at a grid point");
            }
            accepted += inside;
            std::size_t l = 0;
            while (l < g.L && ++idx[l] > 8) idx[l++] = 0;
            if (l == g.L) break;
        }
    }
    for (const auto& [key, layout] : layouts) {
        const auto report = verify::run_all(verify::ssdc_instance(layout));
        bool recon = true, secrecy = true;
        for (const auto& e : report.json.at("reconstruction")) recon = recon && e.at("holds").get<bool>();
        for (const auto& e : report.json.at("secrecy")) secrecy = secrecy && e.at("holds").get<bool>();
        if (!recon || !secrecy) fail(o, "verifier rejected " + layout.params.field.spec().name() + " layout " + key);
        reports.single.emplace_back(key, report.json);
    }
    if (o.pass)
        o.detail = std::to_string(points) + " grid points, " + std::to_string(accepted) + " inside, " +
                   std::to_string(layouts.size()) + " distinct encodings verified exhaustively";
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t cases = 0;
    for (std::size_t L = 1; L <= 6; ++L) {
        for (std::size_t k = 1; k <= L; ++k) {
            for (const Rational H : {Rational(1), Rational(7, 3), Rational(0)}) {
                ++cases;
                const Rational expected = Rational(static_cast<long long>(L), static_cast<long long>(k)) * H;
                if (region::min_sum_rate(L, k, H) != expected) fail(o, "closed form wrong");
                const auto lp = region::lp_min_sum(region::region(L, k, H));
                if (!lp || *lp != expected) fail(o, "LP value differs");
            }
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " (L,k,H) cases, closed form and LP exact";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::size_t cases = 0;
    for (std::size_t L = 1; L <= 5; ++L) {
        for (std::size_t k = 1; k <= L; ++k) {
            for (const Rational H : {Rational(1), Rational(5, 2)}) {
                ++cases;
                if (region::corner_points(L, k, H) != region::enumerate_vertices(region::region(L, k, H)))
                    fail(o, "vertex sets differ");
                if (L >= 2 && k >= 2 &&
                    region::slice(region::region(L, k, H), L - 1) != region::canonicalize(region::region(L - 1, k - 1, H)))
                    fail(o, "slice differs");
            }
        }
    }
    for (std::size_t l = 0; l < 3; ++l) {
        if (!region::slice(region::region(3, 1, 1), l).marked_infeasible()) fail(o, "slice of region(3,1) feasible");
    }
    if (o.pass) o.detail = std::to_string(cases) + " regions; slices match; region(3,1) slices infeasible";
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t nets = 0;
    const Rational H(7, 3);
    for (std::size_t L = 2; L <= 6; ++L) {
        for (std::size_t m = 2; m <= L; ++m) {
            for (std::size_t N = 1; N < m; ++N) {
                ++nets;
                const Rational unit = H / static_cast<long long>(m - N);
                const auto net = wiretap::build(L, N, m, RateTuple(std::vector<Rational>(L, unit)));
                for (std::size_t u = 0; u < net.users().size(); ++u) {
                    const Rational c = wiretap::mincut_to_user(net, u);
                    if (c != unit * static_cast<long long>(m) || c != wiretap::closed_form_user_cut(net, u))
                        fail(o, "user cut");
                }
                for (std::size_t a = 0; a < net.wiretap_sets().size(); ++a) {
                    const Rational c = wiretap::mincut_to_wiretap(net, a);
                    if (c != unit * static_cast<long long>(N) || c != wiretap::closed_form_wiretap_cut(net, a))
                        fail(o, "wiretap cut");
                }
                if (wiretap::achievable_secrecy_rate(net) != H) fail(o, "secrecy rate");
            }
        }
    }
    if (o.pass) o.detail = std::to_string(nets) + " networks, secrecy rate exactly H";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(0, 12), den(1, 7), len(0, 4);
    std::size_t cases = 0;
    for (std::size_t L = 2; L <= 6; ++L) {
        for (std::size_t N = 0; N < L; ++N) {
            for (int trial = 0; trial < 3; ++trial) {
                ++cases;
                std::vector<Rational> h(L - N);
                Rational expected = 0;
                for (std::size_t k = 1; k <= L - N; ++k) {
                    h[k - 1] = Rational(num(rng), den(rng));
                    expected += Rational(static_cast<long long>(L), static_cast<long long>(k)) * h[k - 1];
                }
                if (region::smdc_min_sum_rate(L, N, h) != expected) fail(o, "sum-rate formula");

                // Achievability on the symbol grid: |S_k| a multiple of k.
                multilevel::Params p{L, N, Field::gf(7), {}};
                std::vector<Rational> hs;
                std::vector<std::vector<Symbol>> sources;
                for (std::size_t k = 1; k <= L - N; ++k) {
                    const std::size_t n = k * static_cast<std::size_t>(len(rng));
                    p.source_lengths.push_back(n);
                    hs.emplace_back(static_cast<long long>(n));
                    std::vector<Symbol> s(n);
                    for (auto& x : s) x = rng() % 7;
                    sources.push_back(std::move(s));
                }
                SeededEntropy e(rng());
                const auto bundle = multilevel::encode(p, sources, e);
                Rational measured = 0;
                for (std::size_t l = 0; l < L; ++l) measured += static_cast<long long>(bundle.payload(l).size());
                if (measured != region::smdc_min_sum_rate(L, N, hs)) fail(o, "measured sum rate");
            }
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<Rational> h{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        const auto lp = region::lp_min_sum(region::superposition_region(3, 1, h));
        if (!lp || *lp != region::smdc_min_sum_rate(3, 1, h)) fail(o, "(3,1) LP");
    }
    if (o.pass) o.detail = std::to_string(cases) + " entropy vectors; measured rates and (3,1) LP exact";
    return o;
}

region::InequalitySystem six_rows(const Rational& h1, const Rational& h2) {
    region::InequalitySystem s{3, {}, true};
    for (std::size_t l = 0; l < 3; ++l) {
        std::vector<Rational> c(3, 0);
        c[l] = 1;
        s.rows.push_back({c, h1});
    }
    for (const auto& d : region::subsets(3, 2)) {
        std::vector<Rational> c(3, 0);
        for (auto l : d) c[l] = 1;
        s.rows.push_back({c, 2 * h1 + h2});
    }
    return region::canonicalize(s);
}

Outcome criterion6() {
    Outcome o;
    region::InequalitySystem sym{5, {}, true};
    for (std::size_t l = 0; l < 3; ++l) {
        std::vector<Rational> c(5, 0);
        c[l] = 1;
        c[3] = -1;
        sym.rows.push_back({c, 0});
    }
    for (const auto& d : region::subsets(3, 2)) {
        std::vector<Rational> c(5, 0);
        for (auto l : d) c[l] = 1;
        c[3] = -2;
        c[4] = -1;
        sym.rows.push_back({c, 0});
    }
    if (region::superposition_region_symbolic(3, 1) != region::canonicalize(sym)) fail(o, "symbolic form");
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> num(1, 20), den(1, 9);
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<Rational> h{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        if (region::superposition_region(3, 1, h) != six_rows(h[0], h[1]))
            fail(o, "numeric form for H=(" + to_string(h[0]) + "," + to_string(h[1]) + ")");
    }
    if (o.pass) o.detail = "symbolic and 5 random pairs give exactly the six rows";
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (const auto& [L, N, lengths] : std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>>{
             {3, 1, {1, 1}}, {3, 1, {2, 1}}, {3, 1, {1, 2}}, {4, 2, {1, 1}}, {4, 2, {2, 1}}, {4, 2, {1, 2}}}) {
        const auto layout = multilevel::plan({L, N, Field::gf(5), lengths});
        const auto report = verify::run_all(verify::smdc_instance(layout));
        reports.multi.emplace_back(report.json.at("instance").get<std::string>(), report.json);
    }
    std::size_t sets = 0, sanity = 0;
    for (const auto* group : {&reports.single, &reports.multi}) {
        for (const auto& [name, j] : *group) {
            for (const auto& e : j.at("secrecy")) {
                ++sets;
                if (!e.at("holds").get<bool>() || !e.at("float_agrees").get<bool>()) fail(o, "secrecy fails on " + name);
            }
            if (j.at("sanity").empty()) fail(o, "no sanity sets on " + name);
            for (const auto& e : j.at("sanity")) {
                ++sanity;
                if (!e.at("leak_detected").get<bool>() || !e.contains("counterexample"))
                    fail(o, "threshold set shows no leak on " + name);
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(sets) + " tap sets independent, " + std::to_string(sanity) +
                   " threshold sets leak with counterexamples";
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::size_t checks = 0;
    double min_slack = 0;
    bool first = true;
    for (const auto& [name, j] : reports.multi) {
        if (j.at("converse").empty()) fail(o, "no converse instances on " + name);
        for (const auto& e : j.at("converse")) {
            ++checks;
            const double slack = e.at("slack_bits").get<double>();
            if (first || slack < min_slack) min_slack = slack;
            first = false;
            if (!e.at("holds").get<bool>() || slack < -verify::kEntropyTolerance) fail(o, "converse fails on " + name);
        }
    }
    if (o.pass) {
        std::ostringstream os;
        os << checks << " (k,A,D) instances hold, min slack " << std::setprecision(3) << min_slack << " bits";
        o.detail = os.str();
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome criterion9() {
    Outcome o;
    std::random_device rd;
    const fs::path root = fs::temp_directory_path() / ("smdc_accept_" + std::to_string(rd()));
    fs::create_directories(root);
    std::mt19937 rng(9);
    std::uniform_int_distribution<std::size_t> size(0, 64 * 1024);
    std::size_t files = 0, joins = 0, refusals = 0;
    std::ostringstream sink;
    for (int trial = 0; trial < 100 && o.pass; ++trial) {
        const std::size_t L = trial % 2 ? 4 : 3, N = trial % 2 ? 2 : 1;
        const fs::path dir = root / std::to_string(trial);
        fs::create_directories(dir);
        std::vector<std::string> args{"split", "--L", std::to_string(L), "--N", std::to_string(N), "--out-dir",
                                      (dir / "shares").string()};
        std::vector<std::string> contents;
        for (std::size_t k = 1; k <= L - N; ++k) {
            std::string data(size(rng), '\0');
            for (auto& c : data) c = static_cast<char>(rng());
            const fs::path p = dir / ("source_" + std::to_string(k));
            std::ofstream(p, std::ios::binary) << data;
            args.push_back(p.string());
            contents.push_back(std::move(data));
            ++files;
        }
        if (cli::run(args, sink, sink) != 0) {
            fail(o, "split failed in trial " + std::to_string(trial));
            break;
        }
        for (std::size_t n = 1; n <= L; ++n) {
            for (const auto& u : region::subsets(L, n)) {
                const fs::path out = dir / ("out_" + std::to_string(joins + refusals));
                std::vector<std::string> j{"join", "--out-dir", out.string()};
                for (auto l : u) j.push_back((dir / "shares" / ("share_" + std::to_string(l + 1) + ".smdc")).string());
                const int code = cli::run(j, sink, sink);
                if (n <= N) {
                    ++refusals;
                    if (code != 3 || fs::exists(out)) fail(o, "insufficient subset not refused cleanly");
                    continue;
                }
                ++joins;
                if (code != 0) {
                    fail(o, "join failed");
                    continue;
                }
                std::size_t produced = 0;
                for (const auto& entry : fs::directory_iterator(out)) {
                    (void)entry;
                    ++produced;
                }
                if (produced != n - N) fail(o, "wrong number of recovered files");
                for (std::size_t k = 1; k <= n - N; ++k) {
                    if (slurp(out / ("recovered_" + std::to_string(k) + ".bin")) != contents[k - 1])
                        fail(o, "recovered bytes differ");
                }
            }
        }
        fs::remove_all(dir);
    }
    fs::remove_all(root);
    if (o.pass)
        o.detail = std::to_string(files) + " files, " + std::to_string(joins) + " byte-identical joins, " +
                   std::to_string(refusals) + " clean refusals";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::function<Outcome()> run;
        double limit_seconds;  // 0: none
    };
    const std::vector<Criterion> all{{1, criterion1, 120}, {2, criterion2, 0}, {3, criterion3, 0},
                                     {4, criterion4, 0},   {5, criterion5, 0}, {6, criterion6, 0},
                                     {7, criterion7, 0},   {8, criterion8, 0}, {9, criterion9, 0}};
    bool ok = true;
    double secrecy_seconds = 0;
    for (const auto& c : all) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = seconds_since(t0);
        // The secrecy tables of criterion 7 are built during criterion 1.
        if (c.number == 1 || c.number == 7) secrecy_seconds += s;
        if (c.limit_seconds > 0 && s > c.limit_seconds) {
            o.pass = false;
            o.detail += " (over the time limit)";
        }
        if (c.number == 7 && secrecy_seconds > 300) {
            o.pass = false;
            o.detail += " (over the time limit)";
        }
        ok = ok && o.pass;
        std::cout << "criterion " << c.number << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << " ["
                  << std::fixed << std::setprecision(2) << s << " s]" << std::endl;
    }
    return ok ? 0 : 1;
}
