#include "brownlevi/characters.hpp"

#include "brownlevi/poset.hpp"

#include <algorithm>
#include <cmath>

namespace brownlevi {

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;  // row-major

// Group N/Q on coset indices; Q = 1 gives N itself.
class CosetGroup {
public:
    CosetGroup(const Subgroup& N, const Subgroup& Q) : N_(N) {
        const MatrixGroup& G = N.ambient();
        const auto& el = N.elements();
        coset_.assign(el.size(), UINT32_MAX);
        for (std::size_t i = 0; i < el.size(); ++i) {
            if (coset_[i] != UINT32_MAX) continue;
            const auto id = static_cast<std::uint32_t>(reps_.size());
            reps_.push_back(el[i]);
            for (Elem q : Q.elements()) coset_[pos(G.mul(q, el[i]))] = id;
        }
        identity_ = coset_[pos(G.identity())];
        for (Elem g : N.generators()) {
            const std::uint32_t c = coset_[pos(g)];
            if (c != identity_ && std::find(gens_.begin(), gens_.end(), c) == gens_.end()) gens_.push_back(c);
        }
    }
    std::uint32_t order() const { return static_cast<std::uint32_t>(reps_.size()); }
    std::uint32_t identity() const { return identity_; }
    const std::vector<std::uint32_t>& generators() const { return gens_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return coset_[pos(N_.ambient().mul(reps_[a], reps_[b]))]; }
    std::uint32_t inv(std::uint32_t a) const { return coset_[pos(N_.ambient().inv(reps_[a]))]; }
    u64 element_order(std::uint32_t a) const {
        u64 k = 1;
        for (std::uint32_t x = a; x != identity_; x = mul(x, a)) ++k;
        return k;
    }

private:
    std::size_t pos(Elem x) const { return static_cast<std::size_t>(N_.index_of(x)); }
    Subgroup N_;
    std::vector<std::uint32_t> coset_;
    std::vector<Elem> reps_;
    std::vector<std::uint32_t> gens_;
    std::uint32_t identity_ = 0;
};

u64 mulmod(u64 a, u64 b, u64 r) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % r); }
u64 addmod(u64 a, u64 b, u64 r) { return (a + b) % r; }
u64 submod(u64 a, u64 b, u64 r) { return (a + r - b) % r; }
u64 invmod(u64 a, u64 r) { return pow_mod(a, r - 2, r); }

// Polynomials mod r, low degree first, no trailing zeros.
void ptrim(Vec& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Vec pmod(Vec a, const Vec& b, u64 r) {
    ptrim(a);
    const u64 lead = invmod(b.back(), r);
    while (a.size() >= b.size()) {
        const u64 f = mulmod(a.back(), lead, r);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = submod(a[shift + i], mulmod(f, b[i], r), r);
        ptrim(a);
    }
    return a;
}

Vec pmulmod(const Vec& a, const Vec& b, const Vec& m, u64 r) {
    if (a.empty() || b.empty()) return {};
    Vec c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], r), r);
    return pmod(c, m, r);
}

Vec ppowmod(Vec base, u64 e, const Vec& m, u64 r) {
    Vec acc{1};
    acc = pmod(acc, m, r);
    base = pmod(base, m, r);
    while (e) {
        if (e & 1) acc = pmulmod(acc, base, m, r);
        base = pmulmod(base, base, m, r);
        e >>= 1;
    }
    return acc;
}

Vec pgcd(Vec a, Vec b, u64 r) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        Vec t = pmod(a, b, r);
        a = std::move(b);
        b = std::move(t);
    }
    if (!a.empty()) {
        const u64 li = invmod(a.back(), r);
        for (auto& c : a) c = mulmod(c, li, r);
    }
    return a;
}

// Distinct roots in F_r of a polynomial that splits into linear factors.
void split_roots(const Vec& g, u64 r, std::vector<u64>& out) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(mulmod(r - g[0], invmod(g[1], r), r));
        return;
    }
    for (u64 a = 0; a < r; ++a) {
        Vec h = ppowmod(Vec{a, 1}, (r - 1) / 2, g, r);
        if (h.empty()) h = {r - 1};
        else h[0] = submod(h[0], 1, r);
        ptrim(h);
        const Vec d = pgcd(g, h, r);
        if (d.size() > 1 && d.size() < g.size()) {
            // g / d by long division
            Vec quot(g.size() - d.size() + 1, 0);
            Vec work = g;
            const u64 li = invmod(d.back(), r);
            for (std::size_t i = quot.size(); i-- > 0;) {
                const u64 f = mulmod(work[i + d.size() - 1], li, r);
                quot[i] = f;
                for (std::size_t j = 0; j < d.size(); ++j) work[i + j] = submod(work[i + j], mulmod(f, d[j], r), r);
            }
            ptrim(quot);
            split_roots(d, r, out);
            split_roots(quot, r, out);
            return;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "root splitting failed");
}

std::vector<u64> distinct_roots(const Vec& f, u64 r) {
    // gcd(f, x^r - x) keeps each root once.
    Vec xr = ppowmod(Vec{0, 1}, r, f, r);
    if (xr.size() < 2) xr.resize(2, 0);
    xr[1] = submod(xr[1], 1, r);
    ptrim(xr);
    const Vec g = xr.empty() ? pgcd(f, Vec{}, r) : pgcd(f, xr, r);
    std::vector<u64> out;
    split_roots(g, r, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Characteristic polynomial via reduction to Hessenberg form.
Vec charpoly(Mat H, u64 r) {
    const std::size_t n = H.size();
    for (std::size_t c = 0; c + 2 < n; ++c) {
        std::size_t i = c + 1;
        while (i < n && H[i][c] == 0) ++i;
        if (i == n) continue;
        if (i != c + 1) {
            std::swap(H[i], H[c + 1]);
            for (auto& row : H) std::swap(row[i], row[c + 1]);
        }
        const u64 inv = invmod(H[c + 1][c], r);
        for (std::size_t rr = c + 2; rr < n; ++rr) {
            const u64 f = mulmod(H[rr][c], inv, r);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) H[rr][j] = submod(H[rr][j], mulmod(f, H[c + 1][j], r), r);
            for (std::size_t j = 0; j < n; ++j) H[j][c + 1] = addmod(H[j][c + 1], mulmod(f, H[j][rr], r), r);
        }
    }
    auto h = [&](std::size_t a, std::size_t b) { return H[a - 1][b - 1]; };
    std::vector<Vec> p(n + 1);
    p[0] = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        Vec cur(m + 1, 0);
        for (std::size_t t = 0; t < p[m - 1].size(); ++t) {
            cur[t + 1] = addmod(cur[t + 1], p[m - 1][t], r);
            cur[t] = submod(cur[t], mulmod(h(m, m), p[m - 1][t], r), r);
        }
        u64 prod = 1;
        for (std::size_t i = 1; i < m; ++i) {
            prod = mulmod(prod, h(m - i + 1, m - i), r);
            const u64 coef = mulmod(h(m - i, m), prod, r);
            if (coef == 0) continue;
            for (std::size_t t = 0; t < p[m - i - 1].size(); ++t)
                cur[t] = submod(cur[t], mulmod(coef, p[m - i - 1][t], r), r);
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

// Row reduction in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& A, u64 r) {
    std::vector<std::size_t> piv;
    const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < rows; ++c) {
        std::size_t i = row;
        while (i < rows && A[i][c] == 0) ++i;
        if (i == rows) continue;
        std::swap(A[i], A[row]);
        const u64 inv = invmod(A[row][c], r);
        for (auto& x : A[row]) x = mulmod(x, inv, r);
        for (std::size_t k = 0; k < rows; ++k) {
            if (k == row || A[k][c] == 0) continue;
            const u64 f = A[k][c];
            for (std::size_t j = 0; j < cols; ++j) A[k][j] = submod(A[k][j], mulmod(f, A[row][j], r), r);
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

// Basis of the null space of A (rows x cols) as column vectors.
std::vector<Vec> nullspace(Mat A, u64 r) {
    const std::size_t cols = A.empty() ? 0 : A[0].size();
    const auto piv = rref(A, r);
    std::vector<char> is_piv(cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = submod(0, A[i][f], r);
        out.push_back(std::move(v));
    }
    return out;
}

u64 choose_prime(u64 exponent, u64 order) {
    const auto bound = static_cast<u64>(2 * std::ceil(std::sqrt(static_cast<double>(order))));
    for (u64 t = 1;; ++t) {
        const u64 r = 1 + t * exponent;
        if (r > bound && r > 2 && is_prime(r)) return r;
    }
}

CharTableData dixon(const CosetGroup& G, const Limits& limits) {
    const std::uint32_t n = G.order();
    if (n > limits.max_char_order)
        throw Error(ErrorKind::TooLargeForCharacters, "group of order " + std::to_string(n) + " exceeds the character bound");
    // Conjugacy classes.
    const std::uint32_t unset = UINT32_MAX;
    std::vector<std::uint32_t> cls(n, unset);
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<std::uint32_t> ginv;
    for (std::uint32_t g : G.generators()) ginv.push_back(G.inv(g));
    for (std::uint32_t x = 0; x < n; ++x) {
        if (cls[x] != unset) continue;
        const auto id = static_cast<std::uint32_t>(members.size());
        std::vector<std::uint32_t> orbit{x};
        cls[x] = id;
        for (std::size_t t = 0; t < orbit.size(); ++t)
            for (std::size_t s = 0; s < ginv.size(); ++s) {
                const std::uint32_t y = G.mul(G.mul(ginv[s], orbit[t]), G.generators()[s]);
                if (cls[y] == unset) {
                    cls[y] = id;
                    orbit.push_back(y);
                }
            }
        members.push_back(std::move(orbit));
        if (members.size() > limits.max_char_classes)
            throw Error(ErrorKind::TooLargeForCharacters, "too many conjugacy classes for the character bound");
    }
    const std::size_t k = members.size();
    CharTableData t;
    t.order = n;
    t.identity_class = static_cast<int>(cls[G.identity()]);
    u64 exponent = 1;
    for (const auto& m : members) {
        t.class_sizes.push_back(m.size());
        t.inverse_class.push_back(static_cast<int>(cls[G.inv(m[0])]));
        exponent = lcm_u64(exponent, G.element_order(m[0]));
    }
    t.exponent = exponent;
    const u64 r = choose_prime(exponent, n);
    t.prime = r;

    // Class matrix j: M[i][l] = #{y in C_j : cls(y^{-1} z_l) = i}.
    auto class_matrix = [&](std::size_t j) {
        Mat M(k, Vec(k, 0));
        for (std::size_t l = 0; l < k; ++l) {
            const std::uint32_t z = members[l][0];
            for (std::uint32_t y : members[j]) ++M[cls[G.mul(G.inv(y), z)]][l];
        }
        // omega_j omega_l = sum_i M[l][i] omega_i.
        for (auto& row : M)
            for (auto& x : row) x %= r;
        return M;
    };

    // Common eigenspaces, as lists of basis vectors.
    std::vector<std::vector<Vec>> spaces(1);
    for (std::size_t i = 0; i < k; ++i) {
        Vec e(k, 0);
        e[i] = 1;
        spaces[0].push_back(std::move(e));
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; })) break;
        if (members[j].size() == 1 && static_cast<int>(j) == t.identity_class) continue;
        const Mat M = class_matrix(j);
        std::vector<std::vector<Vec>> next;
        for (auto& B : spaces) {
            const std::size_t d = B.size();
            if (d == 1) {
                next.push_back(std::move(B));
                continue;
            }
            // Restriction R with M B = B R: solve via rref of [B | MB].
            Mat aug(k, Vec(2 * d, 0));
            for (std::size_t c = 0; c < d; ++c) {
                for (std::size_t i = 0; i < k; ++i) aug[i][c] = B[c][i];
                for (std::size_t i = 0; i < k; ++i) {
                    u64 s = 0;
                    for (std::size_t l = 0; l < k; ++l)
                        if (M[i][l] && B[c][l]) s = addmod(s, mulmod(M[i][l], B[c][l], r), r);
                    aug[i][d + c] = s;
                }
            }
            const auto piv = rref(aug, r);
            if (piv.size() != d || piv.back() >= d) throw Error(ErrorKind::InvalidArgument, "eigenspace is not invariant");
            Mat R(d, Vec(d, 0));
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) R[a][b] = aug[a][d + b];
            const auto roots = distinct_roots(charpoly(R, r), r);
            if (roots.size() == 1) {
                next.push_back(std::move(B));
                continue;
            }
            std::size_t total = 0;
            for (u64 lam : roots) {
                Mat S = R;
                for (std::size_t a = 0; a < d; ++a) S[a][a] = submod(S[a][a], lam, r);
                const auto ker = nullspace(S, r);
                total += ker.size();
                std::vector<Vec> nb;
                for (const auto& v : ker) {
                    Vec w(k, 0);
                    for (std::size_t c = 0; c < d; ++c)
                        if (v[c])
                            for (std::size_t i = 0; i < k; ++i) w[i] = addmod(w[i], mulmod(v[c], B[c][i], r), r);
                    nb.push_back(std::move(w));
                }
                next.push_back(std::move(nb));
            }
            if (total != d) throw Error(ErrorKind::InvalidArgument, "class matrix is not diagonalizable");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k) throw Error(ErrorKind::InvalidArgument, "common eigenspaces did not separate");

    const auto root_n = static_cast<u64>(std::floor(std::sqrt(static_cast<double>(n)) + 1e-9));
    for (auto& B : spaces) {
        Vec w = B[0];
        const u64 w1 = w[static_cast<std::size_t>(t.identity_class)];
        if (w1 == 0) throw Error(ErrorKind::InvalidArgument, "eigenvector vanishes at the identity");
        const u64 s1 = invmod(w1, r);
        for (auto& x : w) x = mulmod(x, s1, r);
        // chi(1)^2 = |G| / sum_i omega_i omega_{i*} / h_i
        u64 s = 0;
        for (std::size_t i = 0; i < k; ++i)
            s = addmod(s, mulmod(mulmod(w[i], w[static_cast<std::size_t>(t.inverse_class[i])], r),
                                 invmod(t.class_sizes[i] % r, r), r), r);
        const u64 d2 = mulmod(n % r, invmod(s, r), r);
        u64 deg = 0;
        for (u64 d = 1; d <= root_n; ++d)
            if (mulmod(d, d, r) == d2) {
                deg = d;
                break;
            }
        if (deg == 0) throw Error(ErrorKind::InvalidArgument, "degree could not be lifted");
        Vec chi(k);
        for (std::size_t i = 0; i < k; ++i) chi[i] = mulmod(mulmod(w[i], deg, r), invmod(t.class_sizes[i] % r, r), r);
        t.degrees.push_back(deg);
        t.values.push_back(std::move(chi));
    }
    // Sort characters by degree for a stable presentation.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
        return t.values[a] < t.values[b];
    });
    CharTableData sorted = t;
    for (std::size_t i = 0; i < k; ++i) {
        sorted.degrees[i] = t.degrees[idx[i]];
        sorted.values[i] = t.values[idx[i]];
    }
    // First orthogonality in F_r.
    bool ok = true;
    u64 sumsq = 0;
    for (auto d : sorted.degrees) sumsq += d * d;
    if (sumsq != n) ok = false;
    for (std::size_t a = 0; a < k && ok; ++a)
        for (std::size_t b = a; b < k && ok; ++b) {
            u64 s = 0;
            for (std::size_t i = 0; i < k; ++i)
                s = addmod(s, mulmod(sorted.class_sizes[i] % r,
                                     mulmod(sorted.values[a][i], sorted.values[b][static_cast<std::size_t>(sorted.inverse_class[i])], r),
                                     r), r);
            if (s != (a == b ? n % r : 0)) ok = false;
        }
    sorted.orthogonality_ok = ok;
    if (!ok) throw Error(ErrorKind::InvalidArgument, "character table fails orthogonality");
    return sorted;
}

}  // namespace

CharTableData character_degrees(const Subgroup& H, const Limits& limits) {
    if (H.order() > limits.max_char_order)
        throw Error(ErrorKind::TooLargeForCharacters, "group of order " + std::to_string(H.order()) + " exceeds the character bound");
    return dixon(CosetGroup(H, trivial_subgroup(H.ambient_ptr())), limits);
}

CharTableData quotient_character_degrees(const Subgroup& N, const Subgroup& Q, const Limits& limits) {
    if (!Q.is_subgroup_of(N) || !normalizes_all(N, Q)) throw Error(ErrorKind::InvalidArgument, "Q is not normal in N");
    if (N.order() / Q.order() > limits.max_char_order)
        throw Error(ErrorKind::TooLargeForCharacters, "quotient exceeds the character bound");
    return dixon(CosetGroup(N, Q), limits);
}

std::size_t DefectProfile::kd(int d) const {
    auto it = counts.find(d);
    return it == counts.end() ? 0 : it->second;
}

std::size_t DefectProfile::total() const {
    std::size_t s = 0;
    for (const auto& [d, c] : counts) s += c;
    return s;
}

DefectProfile defect_profile(const CharTableData& t, int ell) {
    DefectProfile p;
    p.ell = ell;
    p.valuation = ell_valuation(BigInt(t.order), ell);
    for (int d = 0; d <= p.valuation; ++d) p.counts[d] = 0;
    for (auto deg : t.degrees) ++p.counts[p.valuation - ell_valuation(BigInt(deg), ell)];
    return p;
}

DefectProfile defect_profile(const Subgroup& H, int ell, const Limits& limits) {
    return defect_profile(character_degrees(H, limits), ell);
}

std::size_t k0(const Subgroup& H, int ell, const Limits& limits) { return defect_profile(H, ell, limits).k0(); }

std::size_t kd(const Subgroup& H, int ell, int d, const Limits& limits) { return defect_profile(H, ell, limits).kd(d); }

WeightCount count_weights(const GroupPtr& G, int ell, const Limits& limits) {
    auto P = enumerate_ell_subgroups(G, ell, trivial_subgroup(G), limits);
    WeightCount wc;
    for (int rep : P->orbit_reps()) {
        const Subgroup& Q = P->member(rep);
        const Subgroup N = P->normalizer(rep);
        WeightTerm term;
        term.Q = Q;
        term.normalizer_order = N.order();
        // An ell-subgroup that is not O_ell(N(Q)) contributes nothing; the quotient count shows it.
        term.k0 = defect_profile(quotient_character_degrees(N, Q, limits), ell).k0();
        wc.total += term.k0;
        wc.terms.push_back(std::move(term));
    }
    return wc;
}

}  // namespace brownlevi
