// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include "smdc/entropy.hpp"
#include "smdc/rate_region.hpp"
#include "smdc/share_file.hpp"
#include "smdc/smdc.hpp"
#include "smdc/ssdc.hpp"
#include "smdc/verifier.hpp"
#include "smdc/wiretap_net.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>

namespace smdc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parameter:
        case ErrorKind::field_mismatch: return kUsage;
        case ErrorKind::insufficient_shares:
        case ErrorKind::region_violation:
        case ErrorKind::infeasible_corner:
        case ErrorKind::budget_exceeded:
        case ErrorKind::resource_exhausted: return kInfeasible;
        case ErrorKind::decode_failure: return kVerification;
        case ErrorKind::format_error:
        case ErrorKind::io_error: return kIo;
        case ErrorKind::internal: return kInternal;
    }
    return kInternal;
}

namespace {

FieldSpec parse_field(const std::string& text) {
    if (text == "5" || text == "gf5") return FieldSpec::prime(5);
    if (text == "7" || text == "gf7") return FieldSpec::prime(7);
    if (text == "256" || text == "gf256") return FieldSpec::binary8(0x11B);
    throw InvalidParameterError("unsupported field '" + text + "' (expected 5, 7 or 256)");
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("cannot read " + path.string());
    return data;
}

/// Write to a sibling temporary, then rename over the target.
void write_atomic(const fs::path& path, std::span<const std::uint8_t> data) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create " + tmp.string());
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw IoError("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto " + path.string());
    }
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

std::vector<std::string> variable_names(std::size_t L, std::size_t K) {
    std::vector<std::string> names;
    for (std::size_t l = 1; l <= L; ++l) names.push_back("R" + std::to_string(l));
    for (std::size_t k = 1; k <= K; ++k) names.push_back("H" + std::to_string(k));
    return names;
}

json rational_json(const Rational& r) { return {{"value", to_string(r)}, {"exact", region::to_json(r)}}; }

json system_json(const region::InequalitySystem& sys, const std::vector<std::string>& names) {
    json j = region::to_json(sys);
    j["variables"] = names;
    j["text"] = json::array();
    for (const auto& row : sys.rows) j["text"].push_back(region::to_string(row, names));
    return j;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out;
    for (auto x : v) out.push_back(x + 1);
    return out;
}

/// Triple given either positionally or by flags; flags win.
struct Shape {
    std::vector<std::size_t> positional;
    std::optional<std::size_t> L, N, m;

    void add(CLI::App* cmd, bool with_m) {
        cmd->add_option("params", positional, with_m ? "L N [m]" : "L N")->expected(0, with_m ? 3 : 2);
        cmd->add_option("--L", L, "Number of encoders");
        cmd->add_option("--N", N, "Number of encoders an eavesdropper may see");
        if (with_m) cmd->add_option("--m", m, "Encoders needed to decode");
    }
    void resolve() {
        if (!L && positional.size() > 0) L = positional[0];
        if (!N && positional.size() > 1) N = positional[1];
        if (!m && positional.size() > 2) m = positional[2];
        if (!L || !N) throw InvalidParameterError("L and N are required");
    }
};

struct SplitArgs {
    std::size_t L = 0, N = 0;
    std::string field = "256";
    std::string out_dir = ".";
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> inputs;
};

int cmd_split(const SplitArgs& a, std::ostream& out) {
    if (a.N >= a.L) throw InvalidParameterError("need N < L");
    const FieldSpec spec = parse_field(a.field);
    if (a.inputs.size() != a.L - a.N)
        throw InvalidParameterError("expected " + std::to_string(a.L - a.N) + " source files, got " +
                                    std::to_string(a.inputs.size()));

    std::vector<fs::path> targets;
    if (!a.outputs.empty()) {
        if (a.outputs.size() != a.L)
            throw InvalidParameterError("--outputs needs " + std::to_string(a.L) + " paths, got " +
                                        std::to_string(a.outputs.size()));
        for (const auto& o : a.outputs) targets.emplace_back(o);
    } else {
        for (std::size_t l = 1; l <= a.L; ++l) targets.push_back(fs::path(a.out_dir) / ("share_" + std::to_string(l) + ".smdc"));
    }
    std::set<fs::path> seen;
    for (const auto& t : targets) {
        if (!seen.insert(fs::absolute(t).lexically_normal()).second)
            throw InvalidParameterError("duplicate output path " + t.string());
    }

    std::vector<std::vector<std::uint8_t>> sources;
    for (const auto& in : a.inputs) sources.push_back(read_file(in));

    std::unique_ptr<EntropySource> entropy;
    if (a.seed)
        entropy = std::make_unique<SeededEntropy>(*a.seed);
    else
        entropy = std::make_unique<SystemEntropy>();
    const auto shares = share::split(a.L, a.N, spec, sources, *entropy);

    std::vector<std::vector<std::uint8_t>> blobs;
    for (const auto& s : shares) blobs.push_back(share::serialize(s));
    if (a.outputs.empty()) ensure_dir(a.out_dir);
    json report{{"shares", json::array()}};
    for (std::size_t l = 0; l < blobs.size(); ++l) {
        write_atomic(targets[l], blobs[l]);
        report["shares"].push_back({{"index", l + 1}, {"path", targets[l].string()}, {"bytes", blobs[l].size()}});
    }
    out << report.dump(2) << '\n';
    return kOk;
}

struct JoinArgs {
    std::string out_dir = ".";
    std::vector<std::string> shares;
};

int cmd_join(const JoinArgs& a, std::ostream& out) {
    std::vector<share::ShareFile> files;
    for (const auto& p : a.shares) {
        try {
            files.push_back(share::parse(read_file(p)));
        } catch (const FormatError& e) {
            throw FormatError(p + ": " + e.what());
        }
    }
    const auto recovered = share::join(files);
    ensure_dir(a.out_dir);
    json report{{"recovered", json::array()}};
    for (std::size_t k = 0; k < recovered.size(); ++k) {
        const fs::path path = fs::path(a.out_dir) / ("recovered_" + std::to_string(k + 1) + ".bin");
        write_atomic(path, recovered[k]);
        report["recovered"].push_back({{"source", k + 1}, {"path", path.string()}, {"bytes", recovered[k].size()}});
    }
    out << report.dump(2) << '\n';
    return kOk;
}

struct RegionArgs {
    Shape shape;
    std::optional<std::string> entropies;
    std::size_t budget = 20000;
};

int cmd_region(RegionArgs& a, std::ostream& out) {
    a.shape.resolve();
    const std::size_t L = *a.shape.L, N = *a.shape.N;
    if (N >= L) throw InvalidParameterError("need N < L");
    region::EliminationOptions options{a.budget};
    json j{{"L", L}, {"N", N}};

    if (a.shape.m) {
        const std::size_t m = *a.shape.m;
        if (!(N < m && m <= L)) throw InvalidParameterError("need N < m <= L");
        Rational H = 1;
        if (a.entropies) {
            const auto hs = parse_rational_list(*a.entropies);
            if (hs.size() != 1) throw InvalidParameterError("a single-level region takes one entropy");
            H = hs.front();
        }
        const std::size_t k = m - N;
        const auto sys = region::canonicalize(region::region(L, k, H));
        j["m"] = m;
        j["entropy"] = rational_json(H);
        j["inequalities"] = system_json(sys, variable_names(L, 0));
        j["corners"] = json::array();
        for (const auto& c : region::corner_points(L, k, H)) j["corners"].push_back(region::to_json(c));
        j["min_sum_rate"] = rational_json(region::min_sum_rate(L, k, H));
        out << j.dump(2) << '\n';
        return kOk;
    }

    const std::size_t K = L - N;
    if (!a.entropies) {
        const auto sys = region::superposition_region_symbolic(L, N, options);
        j["symbolic"] = true;
        j["inequalities"] = system_json(sys, variable_names(L, K));
        json terms = json::array();
        for (std::size_t k = 1; k <= K; ++k) terms.push_back(to_string(Rational(static_cast<long long>(L), static_cast<long long>(k))) + "*H" + std::to_string(k));
        j["min_sum_rate"] = terms;
        out << j.dump(2) << '\n';
        return kOk;
    }
    const auto hs = parse_rational_list(*a.entropies);
    if (hs.size() != K)
        throw InvalidParameterError("expected " + std::to_string(K) + " entropies, got " + std::to_string(hs.size()));
    const auto sys = region::superposition_region(L, N, hs, options);
    j["symbolic"] = false;
    j["entropies"] = json::array();
    for (const auto& h : hs) j["entropies"].push_back(rational_json(h));
    j["inequalities"] = system_json(sys, variable_names(L, 0));
    j["corners"] = json::array();
    for (const auto& c : region::enumerate_vertices(sys)) j["corners"].push_back(region::to_json(c));
    j["min_sum_rate"] = rational_json(region::smdc_min_sum_rate(L, N, hs));
    if (const auto lp = region::lp_min_sum(sys)) j["lp_min_sum_rate"] = rational_json(*lp);
    out << j.dump(2) << '\n';
    return kOk;
}

struct WnArgs {
    Shape shape;
    std::string rates;
    std::optional<std::string> edges;
};

int cmd_wn(WnArgs& a, std::ostream& out) {
    a.shape.resolve();
    if (!a.shape.m) throw InvalidParameterError("m is required");
    const auto rates = region::RateTuple(parse_rational_list(a.rates));
    const auto net = wiretap::build(*a.shape.L, *a.shape.N, *a.shape.m, rates);
    json j{{"L", net.L()}, {"N", net.N()}, {"m", net.m()}, {"rates", region::to_json(rates)}};
    j["users"] = json::array();
    for (std::size_t u = 0; u < net.users().size(); ++u)
        j["users"].push_back({{"encoders", one_based(net.users()[u])}, {"mincut", rational_json(wiretap::mincut_to_user(net, u))}});
    j["wiretap_sets"] = json::array();
    for (std::size_t w = 0; w < net.wiretap_sets().size(); ++w)
        j["wiretap_sets"].push_back(
            {{"encoders", one_based(net.wiretap_sets()[w])}, {"mincut", rational_json(wiretap::mincut_to_wiretap(net, w))}});
    j["secrecy_rate"] = rational_json(wiretap::achievable_secrecy_rate(net));
    if (a.edges) {
        const std::string text = net.edge_list();
        write_atomic(*a.edges, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
        j["edge_list"] = *a.edges;
    }
    out << j.dump(2) << '\n';
    return kOk;
}

struct VerifyArgs {
    Shape shape;
    std::string field = "5";
    std::optional<std::string> lengths;
    std::optional<std::string> rates;
    std::uint64_t budget = 10'000'000;
    unsigned threads = 0;
};

std::vector<std::size_t> parse_lengths(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& r : parse_rational_list(text)) {
        if (denominator(r) != 1 || r < 0) throw InvalidParameterError("lengths must be nonnegative integers");
        out.push_back(static_cast<std::size_t>(numerator(r)));
    }
    return out;
}

int cmd_verify(VerifyArgs& a, std::ostream& out) {
    a.shape.resolve();
    const std::size_t L = *a.shape.L, N = *a.shape.N;
    const Field field(parse_field(a.field));
    verify::CodecInstance codec;
    if (a.shape.m) {
        const ssdc::Params params{L, N, *a.shape.m, field};
        std::size_t length = 1;
        if (a.lengths) {
            const auto ls = parse_lengths(*a.lengths);
            if (ls.size() != 1) throw InvalidParameterError("a single-level code takes one message length");
            length = ls.front();
        }
        if (a.rates)
            codec = verify::ssdc_instance(ssdc::plan_at_rate(params, length, {parse_rational_list(*a.rates)}));
        else
            codec = verify::ssdc_instance(ssdc::plan_symmetric(params, length));
    } else {
        if (a.rates) throw InvalidParameterError("--rates needs --m");
        if (N >= L) throw InvalidParameterError("need N < L");
        multilevel::Params params{L, N, field, std::vector<std::size_t>(L - N, 1)};
        if (a.lengths) params.source_lengths = parse_lengths(*a.lengths);
        codec = verify::smdc_instance(multilevel::plan(params));
    }
    verify::Budget budget;
    budget.max_outcomes = a.budget;
    budget.threads = a.threads;
    const auto report = verify::run_all(codec, budget);
    out << report.json.dump(2) << '\n';
    return report.pass ? kOk : kVerification;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secure multilevel diversity coding: split, join, regions, wiretap analysis, verification"};
    app.name("smdc");
    app.require_subcommand(1);

    SplitArgs split;
    auto* s = app.add_subcommand("split", "Split L-N source files into L share files");
    s->add_option("--L", split.L, "Number of encoders")->required();
    s->add_option("--N", split.N, "Number of encoders an eavesdropper may see")->required();
    s->add_option("--field", split.field, "Field: 5, 7 or 256 (prime fields need bytes below p)")->capture_default_str();
    s->add_option("--out-dir", split.out_dir, "Directory for share_<l>.smdc")->capture_default_str();
    s->add_option("--outputs", split.outputs, "Explicit share paths, one per encoder");
    s->add_option("--seed", split.seed,
                  "TEST ONLY: derive keys from this seed. Deterministic keys void all secrecy guarantees");
    s->add_option("sources", split.inputs, "Source files S_1..S_{L-N}, most important first")->required();

    JoinArgs join;
    auto* j = app.add_subcommand("join", "Recover sources from share files");
    j->add_option("--out-dir", join.out_dir, "Directory for recovered_<k>.bin")->capture_default_str();
    j->add_option("shares", join.shares, "Share files")->required();

    RegionArgs region_args;
    auto* r = app.add_subcommand("region", "Admissible rate region as exact inequalities");
    region_args.shape.add(r, true);
    r->add_option("--entropies", region_args.entropies, "Source entropies, comma-separated rationals");
    r->add_option("--budget", region_args.budget, "Constraint budget for elimination")->capture_default_str();

    WnArgs wn;
    auto* w = app.add_subcommand("wn", "Cut values and secrecy rate of the wiretap network");
    wn.shape.add(w, true);
    w->add_option("--rates", wn.rates, "Edge rates R_1..R_L, comma-separated rationals")->required();
    w->add_option("--edges", wn.edges, "Also write the edge list to this file");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Exhaustive secrecy and reconstruction check of a small code");
    ver.shape.add(v, true);
    v->add_option("--field", ver.field, "Field: 5, 7 or 256")->capture_default_str();
    v->add_option("--lengths", ver.lengths, "Source lengths in symbols (default 1 each)");
    v->add_option("--rates", ver.rates, "Single-level rate tuple in symbols per message symbol");
    v->add_option("--budget", ver.budget, "Maximum number of enumerated outcomes")->capture_default_str();
    v->add_option("--threads", ver.threads, "Worker threads (0: all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (s->parsed()) return cmd_split(split, out);
        if (j->parsed()) return cmd_join(join, out);
        if (r->parsed()) return cmd_region(region_args, out);
        if (w->parsed()) return cmd_wn(wn, out);
        if (v->parsed()) return cmd_verify(ver, out);
    } catch (const Error& e) {
        err << "smdc: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "smdc: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace smdc::cli
