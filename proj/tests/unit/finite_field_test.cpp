// SPDX-License-Identifier: Apache-2.0
#include "smdc/errors.hpp"
#include "smdc/finite_field.hpp"
#include "smdc/rate_region.hpp"

#include <doctest.h>

#include <random>

using namespace smdc;

namespace {

// Reference GF(2^8) product by shift-and-add, independent of the tables.
Symbol slow_mul256(Symbol a, Symbol b, std::uint32_t poly) {
    std::uint32_t r = 0;
    std::uint32_t x = a;
    for (int i = 0; i < 8; ++i) {
        if (b & (1u << i)) r ^= x;
        x <<= 1;
        if (x & 0x100) x ^= poly;
    }
    return r;
}

}  // namespace

TEST_CASE("prime field addition") {
    const Field f = Field::gf(5);
    CHECK(f.add(3, 4) == 2);
    for (Symbol a = 0; a < 5; ++a) CHECK(f.add(a, 0) == a);
    const FieldElement x(f, 3), y(f, 4);
    CHECK((x + y).value() == 2);
    CHECK(add(x, y) == FieldElement(f, 2));
}

TEST_CASE("binary field addition is xor") {
    const Field f = Field::gf256();
    CHECK(f.add(0x53, 0xCA) == 0x99);
    CHECK(f.sub(0x53, 0xCA) == 0x99);
}

TEST_CASE("multiplication and inverse") {
    const Field f = Field::gf(7);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    for (Symbol a = 0; a < 7; ++a) CHECK(f.mul(a, 1) == a);
    CHECK_THROWS_AS(f.inv(0), InvalidParameterError);
    CHECK_THROWS_AS(FieldElement(f, 0).inv(), InvalidParameterError);
    CHECK(Field::gf256().mul(0x53, 0xCA) == 0x01);
}

TEST_CASE("mixing fields is rejected") {
    const FieldElement a(Field::gf(5), 1), b(Field::gf(7), 1);
    CHECK_THROWS_AS(a + b, FieldMismatchError);
    CHECK_THROWS_AS(a * b, FieldMismatchError);
    CHECK_THROWS_AS(FieldElement(Field::gf(5), 5), InvalidParameterError);
}

TEST_CASE("field construction validates the modulus") {
    CHECK_THROWS_AS(Field::gf(6), InvalidParameterError);
    CHECK_THROWS_AS(Field::gf(1), InvalidParameterError);
    CHECK_THROWS_AS(Field::gf(65537 * 2), InvalidParameterError);
    CHECK_THROWS_AS(Field::gf256(0x100), InvalidParameterError);
    CHECK_THROWS_AS(Field::gf256(0x11A), InvalidParameterError);  // divisible by x
    CHECK(is_irreducible_binary8(0x11B));
    CHECK(is_irreducible_binary8(0x11D));
    CHECK(Field::gf(65521).order() == 65521);
}

TEST_CASE("field axioms hold exhaustively for small primes") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) {
        CAPTURE(p);
        const Field f = Field::gf(p);
        for (Symbol a = 0; a < p; ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (Symbol b = 0; b < p; ++b) {
                REQUIRE(f.add(a, b) == f.add(b, a));
                REQUIRE(f.mul(a, b) == f.mul(b, a));
                REQUIRE(f.sub(f.add(a, b), b) == a);
                for (Symbol c = 0; c < p; ++c) {
                    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("GF(2^8) agrees with a shift-and-add multiplier") {
    const Field f = Field::gf256();
    for (Symbol a = 0; a < 256; ++a) {
        for (Symbol b = 0; b < 256; ++b) REQUIRE(f.mul(a, b) == slow_mul256(a, b, 0x11B));
        if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
    }
    const Field g = Field::gf256(0x11D);
    for (Symbol a = 1; a < 256; a += 7) CHECK(g.mul(a, 0x35) == slow_mul256(a, 0x35, 0x11D));
}

TEST_CASE("GF(2^8) axioms on random triples") {
    const Field f = Field::gf256();
    std::mt19937 rng(11);
    std::uniform_int_distribution<Symbol> d(0, 255);
    for (int i = 0; i < 10000; ++i) {
        const Symbol a = d(rng), b = d(rng), c = d(rng);
        REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    }
}

TEST_CASE("pow") {
    const Field f = Field::gf(7);
    CHECK(f.pow(3, 0) == 1);
    CHECK(f.pow(3, 6) == 1);
    CHECK(f.pow(2, 3) == 1);
    CHECK(f.pow(0, 0) == 1);
    CHECK(Field::gf256().pow(2, 8) == 0x1B);
}

TEST_CASE("solve_linear") {
    const Field f = Field::gf(5);
    const Matrix id = Matrix::identity(f, 3);
    const std::vector<Symbol> y{4, 0, 2};
    CHECK(*solve_linear(id, y) == y);

    const std::vector<Symbol> nodes{1, 2};
    const auto v = vandermonde(f, nodes, 2);
    const std::vector<Symbol> rhs{0, 3};
    CHECK(*solve_linear(v, rhs) == std::vector<Symbol>{2, 3});

    const Matrix zero(f, 2, 2);
    CHECK_FALSE(solve_linear(zero, std::vector<Symbol>{1, 0}).has_value());
    CHECK_FALSE(invert(zero).has_value());
    CHECK(rank(zero) == 0);
}

TEST_CASE("invert round trip") {
    const Field f = Field::gf(7);
    const std::vector<Symbol> nodes{1, 3, 5};
    const auto v = vandermonde(f, nodes, 3);
    const auto inv = invert(v);
    REQUIRE(inv.has_value());
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<Symbol> e(3, 0);
        e[j] = 1;
        CHECK(v.apply(inv->apply(e)) == e);
    }
}

TEST_CASE("vandermonde shape and errors") {
    const Field f = Field::gf(5);
    const std::vector<Symbol> nodes{1, 2};
    const auto v = vandermonde(f, nodes, 2);
    CHECK(v(0, 0) == 1);
    CHECK(v(0, 1) == 1);
    CHECK(v(1, 0) == 1);
    CHECK(v(1, 1) == 2);
    const std::vector<Symbol> many{1, 2, 3, 4};
    const auto col = vandermonde(f, many, 1);
    for (std::size_t i = 0; i < 4; ++i) CHECK(col(i, 0) == 1);
    const std::vector<Symbol> dup{1, 1};
    CHECK_THROWS_AS(vandermonde(f, dup, 2), InvalidParameterError);
    CHECK(default_nodes(f, 4) == std::vector<Symbol>{1, 2, 3, 4});
    CHECK_THROWS_AS(default_nodes(f, 5), InvalidParameterError);
}

TEST_CASE("every leading square submatrix of a Vandermonde matrix is nonsingular") {
    for (std::uint32_t q : {5u, 7u, 11u, 13u, 17u}) {
        const Field f = Field::gf(q);
        for (std::size_t L = 1; L <= std::min<std::size_t>(6, q - 1); ++L) {
            const auto nodes = default_nodes(f, L);
            for (std::size_t m = 1; m <= L; ++m) {
                const auto v = vandermonde(f, nodes, m);
                for (std::size_t k = 1; k <= m; ++k) {
                    const auto lead = v.select_cols(0, k);
                    for (const auto& rows : region::subsets(L, k)) {
                        CAPTURE(q);
                        CAPTURE(L);
                        CAPTURE(k);
                        REQUIRE(rank(lead.select_rows(rows)) == k);
                    }
                }
            }
        }
    }
}

TEST_CASE("all minors of the GF(7) Vandermonde matrix on nodes 1, 2, 3") {
    const Field f = Field::gf(7);
    const std::vector<Symbol> nodes{1, 2, 3};
    const auto v = vandermonde(f, nodes, 3);
    for (std::size_t k = 2; k <= 3; ++k) {
        for (const auto& rows : region::subsets(3, k)) {
            for (const auto& cols : region::subsets(3, k)) {
                Matrix minor(f, k, k);
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) minor(i, j) = v(rows[i], cols[j]);
                }
                CHECK(rank(minor) == k);
            }
        }
    }
}
