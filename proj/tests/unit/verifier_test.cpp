// SPDX-License-Identifier: Apache-2.0
#include "smdc/errors.hpp"
#include "smdc/verifier.hpp"

#include <doctest.h>

#include <cmath>

using namespace smdc;
using namespace smdc::verify;

namespace {

JointDistribution two_one_two() {
    const auto layout = ssdc::plan_symmetric({2, 1, 2, Field::gf(5)}, 1);
    return enumerate(ssdc_instance(layout));
}

// Encoder 1 sends the message in the clear, encoder 2 sends a key.
CodecInstance leaky() {
    CodecInstance c;
    c.description = "leaky";
    c.field = Field::gf(3);
    c.L = 2;
    c.N = 1;
    c.source_lengths = {1};
    c.payload_lengths = {1, 1};
    c.recoverable_sources = [](std::size_t u) -> std::size_t { return u >= 1 ? 1 : 0; };
    c.encode = [](std::span<const std::vector<Symbol>> s, EntropySource& e) {
        return Payloads{s[0], {e.next_symbol(3)}};
    };
    c.decode = [](std::span<const ssdc::EncoderPayload> obs) { return Sources{obs[0].symbols}; };
    return c;
}

}  // namespace

TEST_CASE("(2,1,2) joint distribution") {
    const auto d = two_one_two();
    CHECK(d.total() == 25);
    CHECK(d.outcomes().size() == 25);
    CHECK(d.key_symbols() == 1);
    CHECK(d.encoders() == 2);
    CHECK(d.source_count() == 1);
    for (const auto& [row, n] : d.outcomes()) CHECK(d.probability(row) == Rational(1, 25));

    for (std::size_t l = 0; l < 2; ++l) {
        const auto m = d.marginal({{}, {l}});
        CHECK(m.size() == 5);
        for (const auto& [v, n] : m) CHECK(n == 5);
    }
    CHECK(std::abs(d.entropy_bits({{0}, {}}) - std::log2(5.0)) < 1e-12);
    CHECK(std::abs(d.entropy_bits({{0}, {0, 1}}) - std::log2(25.0)) < 1e-12);
}

TEST_CASE("secrecy verdicts") {
    const auto d = two_one_two();
    const std::vector<std::size_t> one{0}, two{1}, both{0, 1};
    CHECK(check_perfect_secrecy(d, one).holds);
    CHECK(check_perfect_secrecy(d, two).holds);
    const auto leak = check_perfect_secrecy(d, both);
    CHECK_FALSE(leak.holds);
    REQUIRE(leak.counterexample);
    CHECK(leak.counterexample->joint != leak.counterexample->source_marginal * leak.counterexample->share_marginal);

    const auto bad = enumerate(leaky());
    CHECK_FALSE(check_perfect_secrecy(bad, one).holds);
    CHECK(check_perfect_secrecy(bad, two).holds);
}

TEST_CASE("conditional entropies") {
    const auto d = two_one_two();
    const auto hidden = conditional_entropy(d, {{0}, {}}, {{}, {0}});
    CHECK(hidden.independent);
    CHECK(std::abs(hidden.bits - std::log2(5.0)) < 1e-12);
    const auto known = conditional_entropy(d, {{0}, {}}, {{}, {0, 1}});
    CHECK_FALSE(known.independent);
    CHECK(std::abs(known.bits) < 1e-12);
}

TEST_CASE("reconstruction verdicts") {
    const auto layout = ssdc::plan_symmetric({3, 1, 2, Field::gf(5)}, 1);
    const auto codec = ssdc_instance(layout);
    const auto d = enumerate(codec);
    const std::vector<std::size_t> pair{0, 2}, single{1};
    const auto ok = check_reconstruction(d, codec, pair);
    CHECK(ok.holds);
    CHECK(ok.expected_sources == 1);
    CHECK(ok.failures == 0);
    const auto refused = check_reconstruction(d, codec, single);
    CHECK(refused.holds);
    CHECK(refused.refused);
    CHECK(refused.expected_sources == 0);

    auto broken = codec;
    broken.decode = [](std::span<const ssdc::EncoderPayload>) { return Sources{{0}}; };
    const auto wrong = check_reconstruction(d, broken, pair);
    CHECK_FALSE(wrong.holds);
    CHECK(wrong.failures == 20);
    CHECK(wrong.counterexample.has_value());
}

TEST_CASE("converse inequality instances") {
    const auto layout = multilevel::plan({3, 1, Field::gf(5), {1, 1}});
    const auto d = enumerate(smdc_instance(layout));
    const std::vector<std::size_t> a{0}, d1{1}, d2{1, 2};
    const auto r1 = check_prop2_inequality(d, 1, 1, a, d1);
    CHECK(r1.holds);
    CHECK(r1.slack >= -kEntropyTolerance);
    const auto r2 = check_prop2_inequality(d, 1, 2, a, d2);
    CHECK(r2.holds);
    CHECK(std::abs(r2.lhs - r2.rhs - r2.slack) < 1e-12);

    const std::vector<std::size_t> overlap{0, 1};
    CHECK_THROWS_AS(check_prop2_inequality(d, 1, 2, a, overlap), InvalidParameterError);
    CHECK_THROWS_AS(check_prop2_inequality(d, 1, 1, a, d2), InvalidParameterError);
    CHECK_THROWS_AS(check_prop2_inequality(d, 1, 1, overlap, d1), InvalidParameterError);
    CHECK_THROWS_AS(check_prop2_inequality(d, 1, 3, a, d2), InvalidParameterError);
}

TEST_CASE("budget refusal") {
    const auto layout = ssdc::plan_symmetric({2, 1, 2, Field::gf(5)}, 1);
    Budget tight;
    tight.max_outcomes = 24;
    CHECK_THROWS_AS(enumerate(ssdc_instance(layout), tight), BudgetExceededError);
    tight.max_outcomes = 25;
    CHECK(enumerate(ssdc_instance(layout), tight).total() == 25);
}

TEST_CASE("thread count does not change the table") {
    const auto layout = multilevel::plan({4, 2, Field::gf(5), {1, 2}});
    Budget one, many;
    one.threads = 1;
    many.threads = 4;
    const auto a = enumerate(smdc_instance(layout), one);
    const auto b = enumerate(smdc_instance(layout), many);
    CHECK(a.outcomes() == b.outcomes());
}

TEST_CASE("full reports") {
    const auto good = run_all(ssdc_instance(ssdc::plan_symmetric({3, 1, 2, Field::gf(5)}, 1)));
    CHECK(good.pass);
    // The empty tap set is listed too.
    CHECK(good.json.at("secrecy").size() == 4);
    CHECK(good.json.at("reconstruction").size() == 7);
    for (const auto& s : good.json.at("secrecy")) CHECK(s.at("float_agrees").get<bool>());
    for (const auto& s : good.json.at("sanity")) CHECK(s.at("leak_detected").get<bool>());

    const auto open = run_all(ssdc_instance(ssdc::plan_symmetric({3, 0, 2, Field::gf(5)}, 2)));
    CHECK(open.pass);
    REQUIRE(open.json.at("secrecy").size() == 1);
    CHECK(open.json.at("secrecy")[0].at("A").empty());

    const auto bad = run_all(leaky());
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.json.at("pass").get<bool>());

    const auto multi = run_all(smdc_instance(multilevel::plan({3, 1, Field::gf(5), {1, 1}})));
    CHECK(multi.pass);
    CHECK_FALSE(multi.json.at("converse").empty());
}
