#pragma once

#include "brownlevi/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace brownlevi {

// Dense matrix over a small finite field, row-major.
struct FqMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> a;

    FqMatrix() = default;
    FqMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}
    static FqMatrix identity(int n);

    std::uint8_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::uint8_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    bool operator==(const FqMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const FqMatrix& o) const { return !(*this == o); }
    bool operator<(const FqMatrix& o) const;
    bool is_zero() const;
    bool is_identity() const;
    std::string to_string() const;
};

namespace linalg {

FqMatrix mul(const FiniteField& F, const FqMatrix& x, const FqMatrix& y);
FqMatrix add(const FiniteField& F, const FqMatrix& x, const FqMatrix& y);
FqMatrix sub(const FiniteField& F, const FqMatrix& x, const FqMatrix& y);
FqMatrix scale(const FiniteField& F, std::uint8_t c, const FqMatrix& x);
FqMatrix transpose(const FqMatrix& x);
FqMatrix pow(const FiniteField& F, const FqMatrix& x, std::uint64_t e);
// Reduced row echelon form; pivots receives the pivot column of each nonzero row.
FqMatrix rref(const FiniteField& F, const FqMatrix& x, std::vector<int>* pivots = nullptr);
int rank(const FiniteField& F, const FqMatrix& x);
// Columns form a basis of {v : x v = 0}.
FqMatrix kernel(const FiniteField& F, const FqMatrix& x);
bool invert(const FiniteField& F, const FqMatrix& x, FqMatrix& out);
// Horizontal concatenation.
FqMatrix hcat(const FqMatrix& x, const FqMatrix& y);
FqMatrix columns(const FqMatrix& x, int first, int count);
// Solve basis * c = v for c where basis has independent columns; false if v is outside the span.
bool coordinates(const FiniteField& F, const FqMatrix& basis, const FqMatrix& v, FqMatrix& c);
// Canonical form of the column span: rref of the transpose.
FqMatrix span_key(const FiniteField& F, const FqMatrix& basis);
// p(x) for a polynomial with coefficients low degree first.
FqMatrix eval_poly(const FiniteField& F, const std::vector<std::uint8_t>& p, const FqMatrix& x);
// Minimal polynomial, monic, low degree first.
std::vector<std::uint8_t> min_poly(const FiniteField& F, const FqMatrix& x);
std::uint64_t multiplicative_order(const FiniteField& F, const FqMatrix& x, std::uint64_t bound);

}  // namespace linalg

namespace fqpoly {

using Poly = std::vector<std::uint8_t>;

void trim(Poly& p);
Poly mul(const FiniteField& F, const Poly& x, const Poly& y);
// Division with remainder; y must be nonzero.
void divmod(const FiniteField& F, const Poly& x, const Poly& y, Poly& quot, Poly& rem);
// Some monic factor of degree between 1 and deg(p) - 1, or empty if p is irreducible.
Poly proper_factor(const FiniteField& F, const Poly& p);

}  // namespace fqpoly

}  // namespace brownlevi
