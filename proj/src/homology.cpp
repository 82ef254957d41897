#include "brownlevi/homology.hpp"

#include <algorithm>
#include <map>

namespace brownlevi {
namespace {

using SparseRow = std::vector<std::pair<int, long long>>;

struct Reduction {
    long long rank = 0;
    std::vector<BigInt> divisors;  // non-unit nonzero elementary divisors
    bool exact = true;
};

long long entry(const SparseRow& r, int c) {
    auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(c, static_cast<long long>(-(1LL << 62))));
    if (it == r.end() || it->first != c) return 0;
    return it->second;
}

// r := r - f * p, returns false if an entry grows beyond the safe range.
bool axpy(SparseRow& r, const SparseRow& p, long long f) {
    SparseRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    constexpr long long cap = 1LL << 40;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            const long long v = -f * p[j].second;
            if (v > cap || v < -cap) return false;
            out.emplace_back(p[j].first, v);
            ++j;
        } else {
            const long long v = r[i].second - f * p[j].second;
            if (v > cap || v < -cap) return false;
            if (v != 0) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    r.swap(out);
    return true;
}

constexpr std::uint64_t kModPrime = 2147483647ull;

long long modular_rank(std::vector<std::vector<BigInt>> m) {
    const std::size_t R = m.size(), C = R ? m[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> a(R, std::vector<std::uint64_t>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            BigInt v = m[i][j] % BigInt(kModPrime);
            if (v < 0) v += kModPrime;
            a[i][j] = static_cast<std::uint64_t>(v);
        }
    long long rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = R;
        for (std::size_t i = row; i < R; ++i)
            if (a[i][col]) {
                piv = i;
                break;
            }
        if (piv == R) continue;
        std::swap(a[piv], a[row]);
        const std::uint64_t inv = pow_mod(a[row][col], kModPrime - 2, kModPrime);
        for (std::size_t i = row + 1; i < R; ++i) {
            if (!a[i][col]) continue;
            const std::uint64_t f = a[i][col] * inv % kModPrime;
            for (std::size_t j = col; j < C; ++j) a[i][j] = (a[i][j] + (kModPrime - f) * a[row][j]) % kModPrime;
        }
        ++row;
        ++rank;
    }
    return rank;
}

Reduction reduce(int nrows, int ncols, std::vector<SparseRow> rows, std::size_t dense_limit) {
    Reduction red;
    std::vector<std::vector<int>> colrows(static_cast<std::size_t>(ncols));
    for (int r = 0; r < nrows; ++r)
        for (auto& [c, v] : rows[static_cast<std::size_t>(r)]) colrows[static_cast<std::size_t>(c)].push_back(r);
    std::vector<char> alive(static_cast<std::size_t>(nrows), 1), done(static_cast<std::size_t>(ncols), 0);
    bool progress = true, overflow = false;
    while (progress && !overflow) {
        progress = false;
        for (int c = 0; c < ncols && !overflow; ++c) {
            if (done[static_cast<std::size_t>(c)]) continue;
            auto& cr = colrows[static_cast<std::size_t>(c)];
            std::sort(cr.begin(), cr.end());
            cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
            std::vector<int> live;
            int pivot = -1;
            for (int r : cr) {
                if (!alive[static_cast<std::size_t>(r)]) continue;
                const long long v = entry(rows[static_cast<std::size_t>(r)], c);
                if (v == 0) continue;
                live.push_back(r);
                if ((v == 1 || v == -1) &&
                    (pivot < 0 || rows[static_cast<std::size_t>(r)].size() < rows[static_cast<std::size_t>(pivot)].size()))
                    pivot = r;
            }
            cr = live;
            if (live.empty()) {
                done[static_cast<std::size_t>(c)] = 1;
                continue;
            }
            if (pivot < 0) continue;
            const SparseRow& p = rows[static_cast<std::size_t>(pivot)];
            const long long pv = entry(p, c);
            for (int r : live) {
                if (r == pivot) continue;
                const long long f = entry(rows[static_cast<std::size_t>(r)], c) * pv;
                if (!axpy(rows[static_cast<std::size_t>(r)], p, f)) {
                    overflow = true;
                    break;
                }
                for (auto& [cc, vv] : rows[static_cast<std::size_t>(r)]) colrows[static_cast<std::size_t>(cc)].push_back(r);
            }
            if (overflow) break;
            alive[static_cast<std::size_t>(pivot)] = 0;
            done[static_cast<std::size_t>(c)] = 1;
            ++red.rank;
            progress = true;
        }
    }
    // Remaining block.
    std::vector<int> rr, cc;
    std::vector<int> colpos(static_cast<std::size_t>(ncols), -1);
    for (int r = 0; r < nrows; ++r) {
        if (!alive[static_cast<std::size_t>(r)]) continue;
        bool any = false;
        for (auto& [c, v] : rows[static_cast<std::size_t>(r)])
            if (!done[static_cast<std::size_t>(c)] && v != 0) {
                any = true;
                if (colpos[static_cast<std::size_t>(c)] < 0) {
                    colpos[static_cast<std::size_t>(c)] = static_cast<int>(cc.size());
                    cc.push_back(c);
                }
            }
        if (any) rr.push_back(r);
    }
    if (rr.empty()) return red;
    std::vector<std::vector<BigInt>> dense(rr.size(), std::vector<BigInt>(cc.size(), 0));
    for (std::size_t i = 0; i < rr.size(); ++i)
        for (auto& [c, v] : rows[static_cast<std::size_t>(rr[i])])
            if (!done[static_cast<std::size_t>(c)]) dense[i][static_cast<std::size_t>(colpos[static_cast<std::size_t>(c)])] = v;
    if (rr.size() > dense_limit || cc.size() > dense_limit) {
        red.rank += modular_rank(std::move(dense));
        red.exact = false;
        return red;
    }
    for (auto& d : smith_diagonal(std::move(dense))) {
        ++red.rank;
        if (d != 1) red.divisors.push_back(d);
    }
    return red;
}

}  // namespace

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
    std::vector<BigInt> diag;
    const std::size_t R = m.size();
    if (R == 0) return diag;
    const std::size_t C = m[0].size();
    std::size_t t = 0;
    while (t < R && t < C) {
        // Pivot of minimal absolute value.
        std::size_t pi = R, pj = C;
        BigInt best = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (m[i][j] == 0) continue;
                const BigInt a = abs(m[i][j]);
                if (pi == R || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == R) break;
        std::swap(m[t], m[pi]);
        for (std::size_t i = 0; i < R; ++i) std::swap(m[i][t], m[i][pj]);
        bool clean = true;
        const BigInt p = m[t][t];
        for (std::size_t i = t + 1; i < R; ++i) {
            if (m[i][t] == 0) continue;
            const BigInt f = m[i][t] / p;
            for (std::size_t j = t; j < C; ++j) m[i][j] -= f * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < C; ++j) {
            if (m[t][j] == 0) continue;
            const BigInt f = m[t][j] / p;
            for (std::size_t i = t; i < R; ++i) m[i][j] -= f * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        // Divisibility of the remaining block by the pivot.
        bool divides = true;
        for (std::size_t i = t + 1; i < R && divides; ++i)
            for (std::size_t j = t + 1; j < C; ++j)
                if (m[i][j] % p != 0) {
                    for (std::size_t k = t; k < C; ++k) m[t][k] += m[i][k];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        diag.push_back(abs(p));
        ++t;
    }
    return diag;
}

long long HomologyProfile::reduced_betti(std::size_t k) const {
    if (k >= betti.size()) return 0;
    if (k == 0 && !empty) return betti[0] - 1;
    return betti[k];
}

std::vector<long long> HomologyProfile::reduced() const {
    std::vector<long long> r(betti.size());
    for (std::size_t k = 0; k < betti.size(); ++k) r[k] = reduced_betti(k);
    return r;
}

long long HomologyProfile::euler() const {
    long long chi = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * betti[k];
    return chi;
}

bool HomologyProfile::acyclic() const {
    if (empty) return false;
    for (std::size_t k = 0; k < betti.size(); ++k)
        if (reduced_betti(k) != 0) return false;
    for (const auto& t : torsion)
        if (!t.empty()) return false;
    return torsion_computed;
}

HomologyProfile homology(const ChainComplex& c_in, const Limits& limits) {
    ChainComplex tmp;
    const ChainComplex* c = &c_in;
    if (c_in.anchor != Anchor::None) {
        std::vector<int> verts = c_in.vertices;
        verts.push_back(c_in.anchor_id);
        tmp = order_complex(c_in.poset, verts, Anchor::None, -1, limits);
        c = &tmp;
    }
    if (c->size() > limits.max_simplices)
        throw Error(ErrorKind::TooLargeComplex, std::to_string(c->size()) + " simplices exceed the bound " +
                                                    std::to_string(limits.max_simplices));
    HomologyProfile h;
    h.empty = c->size() == 0;
    if (h.empty) return h;
    int top = 0;
    for (std::size_t i = 0; i < c->size(); ++i) top = std::max(top, c->dim(i));
    std::vector<std::vector<int>> by_dim(static_cast<std::size_t>(top) + 1);
    std::vector<int> local(c->size());
    for (std::size_t i = 0; i < c->size(); ++i) {
        auto& v = by_dim[static_cast<std::size_t>(c->dim(i))];
        local[i] = static_cast<int>(v.size());
        v.push_back(static_cast<int>(i));
    }
    std::vector<long long> rank(static_cast<std::size_t>(top) + 2, 0);
    h.torsion.assign(static_cast<std::size_t>(top) + 1, {});
    for (int k = 1; k <= top; ++k) {
        const auto& cols = by_dim[static_cast<std::size_t>(k)];
        const int nrows = static_cast<int>(by_dim[static_cast<std::size_t>(k - 1)].size());
        std::vector<SparseRow> rows(static_cast<std::size_t>(nrows));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Chain& s = c->chains[static_cast<std::size_t>(cols[j])];
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Chain face;
                for (std::size_t t = 0; t < s.size(); ++t)
                    if (t != drop) face.push_back(s[t]);
                auto fi = c->find(face);
                if (!fi) throw Error(ErrorKind::InvalidArgument, "complex is not closed under faces");
                rows[static_cast<std::size_t>(local[static_cast<std::size_t>(*fi)])].emplace_back(
                    static_cast<int>(j), drop % 2 == 0 ? 1 : -1);
            }
        }
        for (auto& r : rows) std::sort(r.begin(), r.end());
        Reduction red = reduce(nrows, static_cast<int>(cols.size()), std::move(rows), 600);
        rank[static_cast<std::size_t>(k)] = red.rank;
        if (!red.exact) h.torsion_computed = false;
        std::sort(red.divisors.begin(), red.divisors.end());
        h.torsion[static_cast<std::size_t>(k - 1)] = red.divisors;
    }
    h.betti.assign(static_cast<std::size_t>(top) + 1, 0);
    for (int k = 0; k <= top; ++k)
        h.betti[static_cast<std::size_t>(k)] = static_cast<long long>(by_dim[static_cast<std::size_t>(k)].size()) -
                                               rank[static_cast<std::size_t>(k)] - rank[static_cast<std::size_t>(k) + 1];
    return h;
}

}  // namespace brownlevi
