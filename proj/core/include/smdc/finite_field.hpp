// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic over GF(p) for small primes and over GF(2^8), plus the
// small dense linear algebra used by the MDS codes.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smdc {

/// Raw field symbol. Always interpreted relative to a Field.
using Symbol = std::uint32_t;

enum class FieldKind { prime, binary8 };

/// Identifies a field. For `prime` the modulus is p (prime, p <= 2^16);
/// for `binary8` it is the degree-8 reduction polynomial as a 9-bit mask.
struct FieldSpec {
    FieldKind kind = FieldKind::prime;
    std::uint32_t modulus = 2;

    static FieldSpec prime(std::uint32_t p) { return {FieldKind::prime, p}; }
    static FieldSpec binary8(std::uint32_t poly = 0x11B) { return {FieldKind::binary8, poly}; }

    std::uint32_t order() const { return kind == FieldKind::prime ? modulus : 256u; }
    std::string name() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint32_t n);
bool is_irreducible_binary8(std::uint32_t poly);

/// A validated field. Cheap to copy; GF(2^8) log/exp tables are shared.
class Field {
public:
    /// Throws InvalidParameterError when the modulus is not prime or the
    /// polynomial is not an irreducible degree-8 mask.
    explicit Field(FieldSpec spec);

    static Field gf(std::uint32_t p) { return Field(FieldSpec::prime(p)); }
    static Field gf256(std::uint32_t poly = 0x11B) { return Field(FieldSpec::binary8(poly)); }

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t order() const { return spec_.order(); }
    bool contains(Symbol a) const { return a < order(); }

    Symbol add(Symbol a, Symbol b) const;
    Symbol sub(Symbol a, Symbol b) const;
    Symbol neg(Symbol a) const;
    Symbol mul(Symbol a, Symbol b) const;
    /// Throws InvalidParameterError on zero.
    Symbol inv(Symbol a) const;
    Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
    Symbol pow(Symbol a, std::uint64_t e) const;

    friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

private:
    struct Tables;
    FieldSpec spec_;
    std::shared_ptr<const Tables> tables_;
};

/// A symbol bound to its field. Binary operations on elements of
/// different fields throw FieldMismatchError.
class FieldElement {
public:
    FieldElement(Field field, Symbol value);

    const Field& field() const { return field_; }
    Symbol value() const { return value_; }

    FieldElement inv() const { return {field_, field_.inv(value_)}; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    Field field_;
    Symbol value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

/// Dense row-major matrix of symbols over a fixed field.
class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Symbol& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Symbol operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    static Matrix identity(Field field, std::size_t n);

    Matrix select_rows(std::span<const std::size_t> rows) const;
    Matrix select_cols(std::size_t first, std::size_t count) const;

    /// this * x.
    std::vector<Symbol> apply(std::span<const Symbol> x) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Symbol> data_;
};

/// Solves a * x = y for square a. Returns nullopt when a is singular.
std::optional<std::vector<Symbol>> solve_linear(const Matrix& a, std::span<const Symbol> y);

std::optional<Matrix> invert(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Entry (i, j) = nodes[i]^j for j < width. Nodes must be pairwise distinct.
Matrix vandermonde(const Field& field, std::span<const Symbol> nodes, std::size_t width);

/// The default evaluation nodes 1..count; count must not exceed q - 1.
std::vector<Symbol> default_nodes(const Field& field, std::size_t count);

}  // namespace smdc
