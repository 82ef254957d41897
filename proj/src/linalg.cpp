#include "brownlevi/linalg.hpp"

#include "brownlevi/error.hpp"

#include <sstream>

namespace brownlevi {

FqMatrix FqMatrix::identity(int n) {
    FqMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool FqMatrix::operator<(const FqMatrix& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return a < o.a;
}

bool FqMatrix::is_zero() const {
    for (auto v : a)
        if (v) return false;
    return true;
}

bool FqMatrix::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string FqMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        if (i) os << ";";
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << static_cast<int>(at(i, j));
    }
    os << "]";
    return os.str();
}

namespace linalg {

FqMatrix mul(const FiniteField& F, const FqMatrix& x, const FqMatrix& y) {
    if (x.cols != y.rows) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    FqMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const std::uint8_t c = x.at(i, k);
            if (!c) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(c, y.at(k, j)));
        }
    return r;
}

FqMatrix add(const FiniteField& F, const FqMatrix& x, const FqMatrix& y) {
    FqMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
    return r;
}

FqMatrix sub(const FiniteField& F, const FqMatrix& x, const FqMatrix& y) {
    FqMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.sub(x.a[i], y.a[i]);
    return r;
}

FqMatrix scale(const FiniteField& F, std::uint8_t c, const FqMatrix& x) {
    FqMatrix r = x;
    for (auto& v : r.a) v = F.mul(c, v);
    return r;
}

FqMatrix transpose(const FqMatrix& x) {
    FqMatrix r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

FqMatrix pow(const FiniteField& F, const FqMatrix& x, std::uint64_t e) {
    FqMatrix r = FqMatrix::identity(x.rows), b = x;
    while (e) {
        if (e & 1) r = mul(F, r, b);
        b = mul(F, b, b);
        e >>= 1;
    }
    return r;
}

FqMatrix rref(const FiniteField& F, const FqMatrix& x, std::vector<int>* pivots) {
    FqMatrix m = x;
    if (pivots) pivots->clear();
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        const std::uint8_t inv = F.inv(m.at(row, col));
        for (int j = 0; j < m.cols; ++j) m.at(row, j) = F.mul(inv, m.at(row, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || !m.at(i, col)) continue;
            const std::uint8_t c = m.at(i, col);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(row, j)));
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return m;
}

int rank(const FiniteField& F, const FqMatrix& x) {
    std::vector<int> piv;
    rref(F, x, &piv);
    return static_cast<int>(piv.size());
}

FqMatrix kernel(const FiniteField& F, const FqMatrix& x) {
    std::vector<int> piv;
    const FqMatrix r = rref(F, x, &piv);
    std::vector<char> is_piv(static_cast<std::size_t>(x.cols), 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<int> free_cols;
    for (int j = 0; j < x.cols; ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    FqMatrix k(x.cols, static_cast<int>(free_cols.size()));
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const int f = free_cols[t];
        k.at(f, static_cast<int>(t)) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k.at(piv[i], static_cast<int>(t)) = F.neg(r.at(static_cast<int>(i), f));
    }
    return k;
}

bool invert(const FiniteField& F, const FqMatrix& x, FqMatrix& out) {
    if (x.rows != x.cols) return false;
    const int n = x.rows;
    const FqMatrix aug = hcat(x, FqMatrix::identity(n));
    std::vector<int> piv;
    const FqMatrix r = rref(F, aug, &piv);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return false;
    out = columns(r, n, n);
    return true;
}

FqMatrix hcat(const FqMatrix& x, const FqMatrix& y) {
    if (x.cols == 0) return y;
    if (y.cols == 0) return x;
    if (x.rows != y.rows) throw Error(ErrorKind::InvalidArgument, "hcat row mismatch");
    FqMatrix r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

FqMatrix columns(const FqMatrix& x, int first, int count) {
    FqMatrix r(x.rows, count);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < count; ++j) r.at(i, j) = x.at(i, first + j);
    return r;
}

bool coordinates(const FiniteField& F, const FqMatrix& basis, const FqMatrix& v, FqMatrix& c) {
    const FqMatrix aug = hcat(basis, v);
    std::vector<int> piv;
    const FqMatrix r = rref(F, aug, &piv);
    const int k = basis.cols;
    for (int p : piv)
        if (p >= k) return false;
    if (static_cast<int>(piv.size()) != k) throw Error(ErrorKind::InvalidArgument, "basis columns are dependent");
    c = FqMatrix(k, v.cols);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < v.cols; ++j) c.at(i, j) = r.at(i, k + j);
    return true;
}

FqMatrix span_key(const FiniteField& F, const FqMatrix& basis) {
    std::vector<int> piv;
    FqMatrix r = rref(F, transpose(basis), &piv);
    FqMatrix out(static_cast<int>(piv.size()), r.cols);
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < out.cols; ++j) out.at(i, j) = r.at(i, j);
    return out;
}

FqMatrix eval_poly(const FiniteField& F, const std::vector<std::uint8_t>& p, const FqMatrix& x) {
    FqMatrix acc(x.rows, x.cols);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = mul(F, acc, x);
        for (int i = 0; i < x.rows; ++i) acc.at(i, i) = F.add(acc.at(i, i), *it);
    }
    return acc;
}

std::vector<std::uint8_t> min_poly(const FiniteField& F, const FqMatrix& x) {
    const int n = x.rows;
    const int nn = n * n;
    // Krylov sequence of powers flattened as columns.
    std::vector<FqMatrix> powers{FqMatrix::identity(n)};
    for (int k = 1; k <= n; ++k) {
        powers.push_back(mul(F, powers.back(), x));
        FqMatrix M(nn, k + 1);
        for (int j = 0; j <= k; ++j)
            for (int t = 0; t < nn; ++t) M.at(t, j) = powers[j].a[t];
        const FqMatrix K = kernel(F, M);
        if (K.cols == 0) continue;
        // The first dependency has a one-dimensional kernel with nonzero top coefficient.
        std::vector<std::uint8_t> p(static_cast<std::size_t>(k) + 1);
        for (int j = 0; j <= k; ++j) p[j] = K.at(j, 0);
        const std::uint8_t inv = F.inv(p[k]);
        for (auto& c : p) c = F.mul(inv, c);
        return p;
    }
    throw Error(ErrorKind::InvalidArgument, "minimal polynomial search failed");
}

std::uint64_t multiplicative_order(const FiniteField& F, const FqMatrix& x, std::uint64_t bound) {
    FqMatrix y = x;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        if (y.is_identity()) return k;
        y = mul(F, y, x);
    }
    return 0;
}

}  // namespace linalg

namespace fqpoly {

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const FiniteField& F, const Poly& x, const Poly& y) {
    if (x.empty() || y.empty()) return {};
    Poly r(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
    trim(r);
    return r;
}

void divmod(const FiniteField& F, const Poly& x, const Poly& y, Poly& quot, Poly& rem) {
    Poly d = y;
    trim(d);
    if (d.empty()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
    rem = x;
    trim(rem);
    quot.assign(rem.size() >= d.size() ? rem.size() - d.size() + 1 : 0, 0);
    const std::uint8_t inv = F.inv(d.back());
    while (rem.size() >= d.size() && !rem.empty()) {
        const std::size_t shift = rem.size() - d.size();
        const std::uint8_t c = F.mul(rem.back(), inv);
        quot[shift] = c;
        for (std::size_t j = 0; j < d.size(); ++j) rem[shift + j] = F.sub(rem[shift + j], F.mul(c, d[j]));
        trim(rem);
    }
    trim(quot);
}

Poly proper_factor(const FiniteField& F, const Poly& p) {
    const int deg = static_cast<int>(p.size()) - 1;
    const int q = F.q();
    for (int k = 1; 2 * k <= deg; ++k) {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(q);
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly f(static_cast<std::size_t>(k) + 1, 0);
            std::uint64_t t = c;
            for (int i = 0; i < k; ++i) {
                f[i] = static_cast<std::uint8_t>(t % static_cast<std::uint64_t>(q));
                t /= static_cast<std::uint64_t>(q);
            }
            f[k] = 1;
            Poly qq, r;
            divmod(F, p, f, qq, r);
            if (r.empty()) return f;
        }
    }
    return {};
}

}  // namespace fqpoly

}  // namespace brownlevi
