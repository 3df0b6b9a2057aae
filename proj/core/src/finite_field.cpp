// SPDX-License-Identifier: Apache-2.0
#include "smdc/finite_field.hpp"

#include "smdc/errors.hpp"

#include <array>
#include <cstdio>
#include <set>
#include <utility>

namespace smdc {

namespace {

// Carry-less multiply reduced by `poly`.
std::uint32_t slow_mul8(std::uint32_t a, std::uint32_t b, std::uint32_t poly) {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & 0x100u) a ^= poly;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible_binary8(std::uint32_t poly) {
    if (poly < 0x100 || poly > 0x1FF) return false;
    // Trial division by every polynomial of degree 1..4.
    for (std::uint32_t d = 2; d < 32; ++d) {
        int deg_d = 31 - __builtin_clz(d);
        std::uint32_t rem = poly;
        for (int deg = 8; deg >= deg_d; --deg) {
            if (rem & (1u << deg)) rem ^= d << (deg - deg_d);
        }
        if (rem == 0) return false;
    }
    return true;
}

std::string FieldSpec::name() const {
    if (kind == FieldKind::prime) return "GF(" + std::to_string(modulus) + ")";
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%03X", modulus);
    return std::string("GF(2^8)/") + buf;
}

struct Field::Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> log{};
};

Field::Field(FieldSpec spec) : spec_(spec) {
    if (spec.kind == FieldKind::prime) {
        if (spec.modulus > 65536 || !is_prime(spec.modulus))
            throw InvalidParameterError("field modulus " + std::to_string(spec.modulus) + " is not a prime <= 2^16");
        return;
    }
    if (!is_irreducible_binary8(spec.modulus))
        throw InvalidParameterError("polynomial " + std::to_string(spec.modulus) + " is not irreducible of degree 8");
    // Find a primitive element, then build log/exp tables from it.
    auto tables = std::make_shared<Tables>();
    for (std::uint32_t g = 2; g < 256; ++g) {
        std::uint32_t x = 1;
        std::size_t order = 0;
        do {
            x = slow_mul8(x, g, spec.modulus);
            ++order;
        } while (x != 1);
        if (order != 255) continue;
        x = 1;
        for (std::size_t i = 0; i < 255; ++i) {
            tables->exp[i] = static_cast<std::uint8_t>(x);
            tables->exp[i + 255] = static_cast<std::uint8_t>(x);
            tables->log[x] = static_cast<std::uint8_t>(i);
            x = slow_mul8(x, g, spec.modulus);
        }
        break;
    }
    tables_ = std::move(tables);
}

Symbol Field::add(Symbol a, Symbol b) const {
    if (spec_.kind == FieldKind::binary8) return a ^ b;
    const std::uint32_t s = a + b;
    return s >= spec_.modulus ? s - spec_.modulus : s;
}

Symbol Field::neg(Symbol a) const {
    if (spec_.kind == FieldKind::binary8 || a == 0) return a;
    return spec_.modulus - a;
}

Symbol Field::sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

Symbol Field::mul(Symbol a, Symbol b) const {
    if (spec_.kind == FieldKind::prime)
        return static_cast<Symbol>(static_cast<std::uint64_t>(a) * b % spec_.modulus);
    if (a == 0 || b == 0) return 0;
    return tables_->exp[tables_->log[a] + tables_->log[b]];
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw InvalidParameterError("inverse of zero in " + spec_.name());
    if (spec_.kind == FieldKind::binary8) return tables_->exp[255 - tables_->log[a]];
    // Extended Euclid.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = spec_.modulus, new_r = a;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += spec_.modulus;
    return static_cast<Symbol>(t);
}

Symbol Field::pow(Symbol a, std::uint64_t e) const {
    Symbol result = 1;
    Symbol base = a;
    while (e) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement::FieldElement(Field field, Symbol value) : field_(std::move(field)), value_(value) {
    if (!field_.contains(value_))
        throw InvalidParameterError("value " + std::to_string(value) + " outside " + field_.spec().name());
}

namespace {

const Field& common_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field()))
        throw FieldMismatchError("operands from " + a.field().spec().name() + " and " + b.field().spec().name());
    return a.field();
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.add(a.value(), b.value())};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.sub(a.value(), b.value())};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.mul(a.value(), b.value())};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.div(a.value(), b.value())};
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inv(); }

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
    Matrix out(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) throw InvalidParameterError("row index out of range");
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
    }
    return out;
}

Matrix Matrix::select_cols(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw InvalidParameterError("column range out of range");
    Matrix out(field_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
}

std::vector<Symbol> Matrix::apply(std::span<const Symbol> x) const {
    if (x.size() != cols_) throw InvalidParameterError("matrix/vector dimension mismatch");
    std::vector<Symbol> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        Symbol acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc = field_.add(acc, field_.mul((*this)(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

namespace {

// Gauss-Jordan on the augmented matrix [a | b]. Returns the rank of a;
// on full rank, b holds a^-1 b.
std::size_t eliminate(Matrix& a, Matrix* b) {
    const Field& f = a.field();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != rank) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(rank, j));
            if (b)
                for (std::size_t j = 0; j < b->cols(); ++j) std::swap((*b)(pivot, j), (*b)(rank, j));
        }
        const Symbol scale = f.inv(a(rank, col));
        for (std::size_t j = 0; j < a.cols(); ++j) a(rank, j) = f.mul(a(rank, j), scale);
        if (b)
            for (std::size_t j = 0; j < b->cols(); ++j) (*b)(rank, j) = f.mul((*b)(rank, j), scale);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a(i, col) == 0) continue;
            const Symbol factor = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(rank, j)));
            if (b)
                for (std::size_t j = 0; j < b->cols(); ++j)
                    (*b)(i, j) = f.sub((*b)(i, j), f.mul(factor, (*b)(rank, j)));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::optional<std::vector<Symbol>> solve_linear(const Matrix& a, std::span<const Symbol> y) {
    if (a.rows() != a.cols()) throw InvalidParameterError("solve_linear requires a square matrix");
    if (y.size() != a.rows()) throw InvalidParameterError("solve_linear: right-hand side has wrong length");
    Matrix work = a;
    Matrix rhs(a.field(), y.size(), 1);
    for (std::size_t i = 0; i < y.size(); ++i) rhs(i, 0) = y[i];
    if (eliminate(work, &rhs) != a.rows()) return std::nullopt;
    std::vector<Symbol> x(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rhs(i, 0);
    return x;
}

std::optional<Matrix> invert(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidParameterError("invert requires a square matrix");
    Matrix work = a;
    Matrix result = Matrix::identity(a.field(), a.rows());
    if (eliminate(work, &result) != a.rows()) return std::nullopt;
    return result;
}

std::size_t rank(const Matrix& a) {
    Matrix work = a;
    return eliminate(work, nullptr);
}

Matrix vandermonde(const Field& field, std::span<const Symbol> nodes, std::size_t width) {
    std::set<Symbol> seen;
    for (Symbol n : nodes) {
        if (!field.contains(n)) throw InvalidParameterError("vandermonde node outside the field");
        if (!seen.insert(n).second) throw InvalidParameterError("vandermonde nodes must be pairwise distinct");
    }
    Matrix m(field, nodes.size(), width);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Symbol p = 1;
        for (std::size_t j = 0; j < width; ++j) {
            m(i, j) = p;
            p = field.mul(p, nodes[i]);
        }
    }
    return m;
}

std::vector<Symbol> default_nodes(const Field& field, std::size_t count) {
    if (count + 1 > field.order())
        throw InvalidParameterError("field " + field.spec().name() + " has only " + std::to_string(field.order() - 1) +
                                    " nonzero evaluation nodes, " + std::to_string(count) + " requested");
    std::vector<Symbol> nodes(count);
    for (std::size_t i = 0; i < count; ++i) nodes[i] = static_cast<Symbol>(i + 1);
    return nodes;
}

}  // namespace smdc
