// SPDX-License-Identifier: Apache-2.0
#include "smdc/entropy.hpp"
#include "smdc/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace smdc;

TEST_CASE("seeded streams are reproducible and fork deterministically") {
    SeededEntropy a(42), b(42), c(43);
    std::vector<Symbol> xa, xb, xc;
    for (int i = 0; i < 64; ++i) {
        xa.push_back(a.next_symbol(256));
        xb.push_back(b.next_symbol(256));
        xc.push_back(c.next_symbol(256));
    }
    CHECK(xa == xb);
    CHECK(xa != xc);

    auto f1 = SeededEntropy(42).fork(1);
    auto f1b = SeededEntropy(42).fork(1);
    auto f2 = SeededEntropy(42).fork(2);
    std::vector<Symbol> y1, y1b, y2;
    for (int i = 0; i < 32; ++i) {
        y1.push_back(f1->next_symbol(256));
        y1b.push_back(f1b->next_symbol(256));
        y2.push_back(f2->next_symbol(256));
    }
    CHECK(y1 == y1b);
    CHECK(y1 != y2);
}

TEST_CASE("scripted entropy replays across forks and runs dry") {
    ScriptedEntropy s({1, 2, 3});
    CHECK(s.next_symbol(5) == 1);
    auto child = s.fork(9);
    CHECK(child->next_symbol(5) == 2);
    CHECK(s.next_symbol(5) == 3);
    CHECK(s.consumed() == 3);
    CHECK_THROWS(s.next_symbol(5));
    ScriptedEntropy big({7});
    CHECK_THROWS(big.next_symbol(5));
}

TEST_CASE("counting entropy counts the whole fork tree") {
    CountingEntropy c;
    c.next_symbol(5);
    c.fork(1)->next_symbol(5);
    c.fork(2)->fork(3)->next_symbol(5);
    CHECK(c.count() == 3);
}

TEST_CASE("system entropy stays in range") {
    SystemEntropy e;
    for (int i = 0; i < 1000; ++i) CHECK(e.next_symbol(7) < 7);
}

TEST_CASE("seeded symbols are uniform within five sigma") {
    SeededEntropy e(2024);
    const std::uint32_t q = 5;
    const int draws = 10000;
    std::vector<int> count(q, 0);
    for (int i = 0; i < draws; ++i) ++count[e.next_symbol(q)];
    double chi2 = 0;
    const double expected = double(draws) / q;
    for (int c : count) chi2 += (c - expected) * (c - expected) / expected;
    const double dof = q - 1;
    CHECK(chi2 < dof + 5 * std::sqrt(2 * dof));
}
