#include "brownlevi/reductive.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace brownlevi {

namespace {

using Poly = fqpoly::Poly;

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

FqMatrix companion(const FiniteField& F, const Poly& mu) {
    const int d = static_cast<int>(mu.size()) - 1;
    FqMatrix C(d, d);
    for (int k = 0; k + 1 < d; ++k) C.at(k + 1, k) = 1;
    for (int k = 0; k < d; ++k) C.at(k, d - 1) = F.neg(mu[static_cast<std::size_t>(k)]);
    return C;
}

FqMatrix block_diag(const std::vector<FqMatrix>& parts) {
    int n = 0;
    for (const auto& p : parts) n += p.rows;
    FqMatrix r(n, n);
    int o = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.rows; ++i)
            for (int j = 0; j < p.cols; ++j) r.at(o + i, o + j) = p.at(i, j);
        o += p.rows;
    }
    return r;
}

// R with M B = B R for an M-invariant subspace with basis B.
FqMatrix restrict_to(const FiniteField& F, const FqMatrix& B, const FqMatrix& M) {
    FqMatrix R;
    if (!linalg::coordinates(F, B, linalg::mul(F, M, B), R))
        throw Error(ErrorKind::InvalidArgument, "subspace is not invariant");
    return R;
}

bool has_order(const FiniteField& F, const FqMatrix& y, std::uint64_t N) {
    const FqMatrix I = FqMatrix::identity(y.rows);
    if (linalg::pow(F, y, N) != I) return false;
    for (auto r : prime_factors(N))
        if (linalg::pow(F, y, N / r) == I) return false;
    return true;
}

// F_q-basis of the unital algebra generated by commuting w x w matrices.
std::vector<FqMatrix> algebra_basis(const FiniteField& F, const std::vector<FqMatrix>& gens, int w) {
    std::vector<FqMatrix> basis{FqMatrix::identity(w)};
    const int ww = w * w;
    auto independent = [&](const FqMatrix& cand) {
        FqMatrix M(static_cast<int>(basis.size()) + 1, ww);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (int t = 0; t < ww; ++t) M.at(static_cast<int>(i), t) = basis[i].a[static_cast<std::size_t>(t)];
        for (int t = 0; t < ww; ++t) M.at(static_cast<int>(basis.size()), t) = cand.a[static_cast<std::size_t>(t)];
        return linalg::rank(F, M) == static_cast<int>(basis.size()) + 1;
    };
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& g : gens) {
            FqMatrix p = linalg::mul(F, basis[i], g);
            if (independent(p)) basis.push_back(std::move(p));
        }
    return basis;
}

// Splits W = span(B) into blocks on which the algebra generated by gens is a field.
void split_blocks(const FiniteField& F, const std::vector<FqMatrix>& gens, const FqMatrix& B,
                  std::vector<IsotypicBlock>& out) {
    const int w = B.cols;
    std::vector<FqMatrix> restricted;
    for (const auto& g : gens) restricted.push_back(restrict_to(F, B, g));
    const auto alg = algebra_basis(F, restricted, w);
    const int D = static_cast<int>(alg.size());
    const auto q = static_cast<std::uint64_t>(F.q());
    const std::uint64_t count = ipow(q, D);
    auto combo = [&](std::uint64_t c) {
        FqMatrix x(w, w);
        for (int i = 0; i < D; ++i, c /= q) {
            const auto ci = static_cast<std::uint8_t>(c % q);
            if (ci) x = linalg::add(F, x, linalg::scale(F, ci, alg[static_cast<std::size_t>(i)]));
        }
        return x;
    };
    for (std::uint64_t c = 1; c < count; ++c) {
        const FqMatrix x = combo(c);
        const Poly mu = linalg::min_poly(F, x);
        const Poly f = fqpoly::proper_factor(F, mu);
        if (!f.empty()) {
            Poly g, rem;
            fqpoly::divmod(F, mu, f, g, rem);
            const FqMatrix K1 = linalg::kernel(F, linalg::eval_poly(F, f, x));
            const FqMatrix K2 = linalg::kernel(F, linalg::eval_poly(F, g, x));
            if (K1.cols == 0 || K2.cols == 0 || K1.cols + K2.cols != w)
                throw Error(ErrorKind::InvalidArgument, "algebra is not semisimple");
            split_blocks(F, gens, linalg::mul(F, B, K1), out);
            split_blocks(F, gens, linalg::mul(F, B, K2), out);
            return;
        }
        if (static_cast<int>(mu.size()) - 1 == D) {
            // F_q[x] is the whole algebra, a field of degree D.
            const std::uint64_t N = ipow(q, D) - 1;
            std::vector<FqMatrix> powers{FqMatrix::identity(w)};
            for (int i = 1; i < D; ++i) powers.push_back(linalg::mul(F, powers.back(), x));
            for (std::uint64_t t = 1; t < count; ++t) {
                FqMatrix y(w, w);
                std::uint64_t s = t;
                for (int i = 0; i < D; ++i, s /= q) {
                    const auto ci = static_cast<std::uint8_t>(s % q);
                    if (ci) y = linalg::add(F, y, linalg::scale(F, ci, powers[static_cast<std::size_t>(i)]));
                }
                if (has_order(F, y, N)) {
                    IsotypicBlock b;
                    b.d = D;
                    b.m = w / D;
                    b.basis = B;
                    b.field_gen = std::move(y);
                    out.push_back(std::move(b));
                    return;
                }
            }
            throw Error(ErrorKind::InvalidArgument, "no field generator found");
        }
    }
    throw Error(ErrorKind::InvalidArgument, "isotypic decomposition failed");
}

// Basis [v1, Y v1, .., Y^{d-1} v1, v2, ..] of F_q^w adapted to the F_q[Y]-structure.
FqMatrix field_adapted_basis(const FiniteField& F, const FqMatrix& Y, int d) {
    const int w = Y.rows;
    FqMatrix P(w, 0);
    for (int k = 0; k < w && P.cols < w; ++k) {
        FqMatrix v(w, 1);
        v.at(k, 0) = 1;
        if (P.cols > 0 && linalg::rank(F, linalg::hcat(P, v)) == P.cols) continue;
        for (int i = 0; i < d; ++i) {
            P = linalg::hcat(P, v);
            v = linalg::mul(F, Y, v);
        }
    }
    if (P.cols != w || linalg::rank(F, P) != w) throw Error(ErrorKind::InvalidArgument, "block is not a vector space over its field");
    return P;
}

// Generators of GL_m(K) where K = F_q[C] acts diagonally on m copies of F_q^d.
std::vector<FqMatrix> gl_over_field_generators(const FqMatrix& C, int m) {
    const int d = C.rows;
    const int w = d * m;
    std::vector<FqMatrix> gens;
    for (int i = 0; i < m; ++i) {
        FqMatrix g = FqMatrix::identity(w);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) g.at(i * d + a, i * d + b) = C.at(a, b);
        if (!g.is_identity()) gens.push_back(std::move(g));
    }
    for (int i = 0; i + 1 < m; ++i) {
        FqMatrix up = FqMatrix::identity(w), down = FqMatrix::identity(w);
        for (int a = 0; a < d; ++a) {
            up.at(i * d + a, (i + 1) * d + a) = 1;
            down.at((i + 1) * d + a, i * d + a) = 1;
        }
        gens.push_back(std::move(up));
        gens.push_back(std::move(down));
    }
    return gens;
}

std::string bytes_of(const FqMatrix& m) {
    std::string s = std::to_string(m.rows) + "x" + std::to_string(m.cols) + ":";
    for (auto c : m.a) s += std::to_string(c) + ",";
    return s;
}

FqMatrix canonical_span(const FiniteField& F, const FqMatrix& B) {
    if (B.cols == 0) return B;
    return linalg::transpose(linalg::span_key(F, B));
}

std::vector<Elem> cyclic_elements(const MatrixGroup& G, Elem x) {
    std::vector<Elem> out{G.identity()};
    for (Elem y = x; y != G.identity(); y = G.mul(y, x)) out.push_back(y);
    std::sort(out.begin(), out.end());
    return out;
}

void partitions(int k, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int b = std::min(k, max_part); b >= 1; --b) {
        cur.push_back(b);
        partitions(k - b, b, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::shared_ptr<const GLContext> GLContext::make(int n, int q, const Limits& limits) {
    return wrap(build_gl(n, q, limits.max_group_order));
}

std::shared_ptr<const GLContext> GLContext::wrap(const GroupPtr& G) {
    auto ctx = std::make_shared<GLContext>();
    ctx->n = G->degree();
    ctx->q = G->field().q();
    ctx->p = G->field().p();
    ctx->G = G;
    ctx->F = G->field_ptr();
    if (order_poly_gl(ctx->n).evaluate(ctx->q) != BigInt(G->order()))
        throw Error(ErrorKind::InvalidArgument, "group is not the full general linear group");
    int D = 1;
    for (int d = 1; d <= ctx->n; ++d) D = static_cast<int>(lcm_u64(static_cast<std::uint64_t>(D), static_cast<std::uint64_t>(d)));
    if (BigInt(ctx->q) > 0 && boost::multiprecision::pow(BigInt(ctx->q), static_cast<unsigned>(D)) > BigInt(1u << 24))
        throw Error(ErrorKind::TooLarge, "field tower F_{q^" + std::to_string(D) + "} is too large");
    ctx->tower = std::make_shared<FieldTower>(ctx->F, D);
    return ctx;
}

Elem GLContext::element(const FqMatrix& m) const {
    auto x = G->find(m);
    if (!x) throw Error(ErrorKind::InvalidArgument, "matrix is not invertible");
    return *x;
}

FqMatrix LeviDatum::frame() const {
    FqMatrix f(ctx->n, 0);
    for (const auto& b : blocks) f = linalg::hcat(f, b.basis);
    return linalg::hcat(f, v0);
}

namespace {

FqMatrix in_frame(const LeviDatum& L, std::size_t j, const FqMatrix& local) {
    const FiniteField& F = *L.ctx->F;
    const int n = L.ctx->n;
    FqMatrix M = FqMatrix::identity(n);
    int o = 0;
    for (std::size_t i = 0; i < j; ++i) o += L.blocks[i].basis.cols;
    for (int a = 0; a < local.rows; ++a)
        for (int b = 0; b < local.cols; ++b) M.at(o + a, o + b) = local.at(a, b);
    const FqMatrix fr = L.frame();
    FqMatrix inv;
    if (!linalg::invert(F, fr, inv)) throw Error(ErrorKind::InvalidArgument, "blocks do not span");
    return linalg::mul(F, linalg::mul(F, fr, M), inv);
}

}  // namespace

FqMatrix LeviDatum::scalar_action(std::size_t j) const { return in_frame(*this, j, blocks.at(j).field_gen); }

FqMatrix LeviDatum::v0_scalar_action() const {
    const FiniteField& F = *ctx->F;
    FqMatrix s = linalg::scale(F, F.primitive(), FqMatrix::identity(n0()));
    return in_frame(*this, blocks.size(), s);
}

IntPolynomial LeviDatum::order_polynomial() const {
    IntPolynomial p = IntPolynomial::constant(1);
    for (const auto& b : blocks) p = p * order_poly_gl(b.m).compose_power(b.d);
    if (n0() > 0) p = p * order_poly_gl(n0());
    return p;
}

BigInt LeviDatum::predicted_order() const { return order_polynomial().evaluate(ctx->q); }

bool LeviDatum::contains(Elem g) const {
    const FiniteField& F = *ctx->F;
    const FqMatrix fr = frame();
    FqMatrix inv;
    if (!linalg::invert(F, fr, inv)) return false;
    const FqMatrix M = linalg::mul(F, linalg::mul(F, inv, ctx->G->matrix(g)), fr);
    std::vector<int> start{0};
    for (const auto& b : blocks) start.push_back(start.back() + b.basis.cols);
    start.push_back(ctx->n);
    auto part = [&](int idx) {
        int k = 0;
        while (idx >= start[static_cast<std::size_t>(k) + 1]) ++k;
        return k;
    };
    for (int i = 0; i < ctx->n; ++i)
        for (int j = 0; j < ctx->n; ++j)
            if (M.at(i, j) != 0 && part(i) != part(j)) return false;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const int o = start[k], w = blocks[k].basis.cols;
        FqMatrix sub(w, w);
        for (int a = 0; a < w; ++a)
            for (int b = 0; b < w; ++b) sub.at(a, b) = M.at(o + a, o + b);
        const FqMatrix& Y = blocks[k].field_gen;
        if (linalg::mul(F, sub, Y) != linalg::mul(F, Y, sub)) return false;
    }
    return true;
}

Subgroup LeviDatum::subgroup() const {
    const FiniteField& F = *ctx->F;
    // Frame adapted to each block's field structure.
    FqMatrix fr(ctx->n, 0);
    std::vector<int> widths;
    std::vector<std::vector<FqMatrix>> block_gens;
    for (const auto& b : blocks) {
        const FqMatrix P = field_adapted_basis(F, b.field_gen, b.d);
        fr = linalg::hcat(fr, linalg::mul(F, b.basis, P));
        FqMatrix Pinv;
        linalg::invert(F, P, Pinv);
        const FqMatrix Yp = linalg::mul(F, linalg::mul(F, Pinv, b.field_gen), P);
        const FqMatrix C = companion(F, linalg::min_poly(F, b.field_gen));
        FqMatrix expect = block_diag(std::vector<FqMatrix>(static_cast<std::size_t>(b.m), C));
        if (Yp != expect) throw Error(ErrorKind::InvalidArgument, "field structure mismatch");
        block_gens.push_back(gl_over_field_generators(C, b.m));
        widths.push_back(b.basis.cols);
    }
    fr = linalg::hcat(fr, v0);
    if (n0() > 0) {
        FqMatrix z(1, 1);
        z.at(0, 0) = F.primitive();
        block_gens.push_back(gl_over_field_generators(z, n0()));
        widths.push_back(n0());
    }
    FqMatrix inv;
    if (!linalg::invert(F, fr, inv)) throw Error(ErrorKind::InvalidArgument, "blocks do not span");
    std::vector<Elem> gens;
    int o = 0;
    for (std::size_t k = 0; k < block_gens.size(); ++k) {
        for (const auto& g : block_gens[k]) {
            FqMatrix M = FqMatrix::identity(ctx->n);
            for (int a = 0; a < g.rows; ++a)
                for (int b = 0; b < g.cols; ++b) M.at(o + a, o + b) = g.at(a, b);
            gens.push_back(ctx->element(linalg::mul(F, linalg::mul(F, fr, M), inv)));
        }
        o += widths[k];
    }
    Subgroup S = subgroup_closure(ctx->G, gens);
    if (BigInt(S.order()) != predicted_order())
        throw Error(ErrorKind::InvalidArgument, "Levi subgroup order " + std::to_string(S.order()) + " differs from its order polynomial");
    return S;
}

Subgroup LeviDatum::center_subgroup() const {
    std::vector<Elem> gens;
    for (std::size_t j = 0; j < blocks.size(); ++j) gens.push_back(ctx->element(scalar_action(j)));
    if (n0() > 0) gens.push_back(ctx->element(v0_scalar_action()));
    return subgroup_closure(ctx->G, gens);
}

LeviDatum LeviDatum::conjugate(Elem g) const {
    const FiniteField& F = *ctx->F;
    const FqMatrix gi = ctx->G->matrix(ctx->G->inv(g));
    LeviDatum r = *this;
    for (auto& b : r.blocks) b.basis = linalg::mul(F, gi, b.basis);
    if (r.v0.cols > 0) r.v0 = linalg::mul(F, gi, r.v0);
    r.canonicalize();
    return r;
}

std::string LeviDatum::key() const {
    const FiniteField& F = *ctx->F;
    std::ostringstream os;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto& b = blocks[j];
        os << b.d << '/' << b.m << '/' << bytes_of(linalg::span_key(F, b.basis)) << '/'
           << fingerprint_of(cyclic_elements(*ctx->G, ctx->element(scalar_action(j)))) << ';';
    }
    os << "v0/" << (v0.cols ? bytes_of(linalg::span_key(F, v0)) : std::string("0"));
    return os.str();
}

std::string LeviDatum::type_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << 'x';
        first = false;
    };
    for (const auto& b : blocks) {
        sep();
        os << "GL" << b.m << '(' << ipow(static_cast<std::uint64_t>(ctx->q), b.d) << ')';
    }
    if (n0() > 0) {
        sep();
        os << "GL" << n0() << '(' << ctx->q << ')';
    }
    if (first) os << "GL0";
    return os.str();
}

void LeviDatum::canonicalize() {
    const FiniteField& F = *ctx->F;
    std::vector<std::pair<std::string, IsotypicBlock>> keyed;
    for (auto& b : blocks) keyed.emplace_back(bytes_of(linalg::span_key(F, b.basis)), std::move(b));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.second.d != y.second.d) return x.second.d < y.second.d;
        if (x.second.m != y.second.m) return x.second.m < y.second.m;
        return x.first < y.first;
    });
    blocks.clear();
    for (auto& kb : keyed) blocks.push_back(std::move(kb.second));
    if (v0.rows == 0) v0 = FqMatrix(ctx->n, 0);
    v0 = canonical_span(F, v0);
}

LeviDatum connected_centralizer(const ContextPtr& ctx, const Subgroup& A) {
    if (!A.is_abelian()) throw Error(ErrorKind::NotAbelian, "connected_centralizer needs an abelian subgroup");
    if (A.order() % static_cast<std::uint64_t>(ctx->p) == 0)
        throw Error(ErrorKind::DefiningCharacteristic, "subgroup order divisible by the characteristic");
    std::vector<FqMatrix> gens;
    for (Elem g : A.generators()) gens.push_back(ctx->G->matrix(g));
    LeviDatum L;
    L.ctx = ctx;
    split_blocks(*ctx->F, gens, FqMatrix::identity(ctx->n), L.blocks);
    L.v0 = FqMatrix(ctx->n, 0);
    L.canonicalize();
    return L;
}

IntPolynomial levi_order_polynomial(const LeviDatum& L) { return L.order_polynomial(); }

TorusPart phi_e_center_part(const LeviDatum& L, int e) {
    if (e < 1) throw Error(ErrorKind::InvalidArgument, "e must be positive");
    TorusPart T;
    T.source = L;
    T.e = e;
    const BigInt phi = cyclotomic_poly(e).evaluate(L.ctx->q);
    for (std::size_t j = 0; j < L.blocks.size(); ++j)
        if (L.blocks[j].d % e == 0) {
            T.flagged.push_back(j);
            T.fixed_point_orders.push_back(phi);
        }
    if (e == 1 && L.n0() > 0) {
        T.v0_flagged = true;
        T.fixed_point_orders.push_back(phi);
    }
    return T;
}

LeviDatum e_split_centralizer(const TorusPart& T) {
    const LeviDatum& S = T.source;
    const FiniteField& F = *S.ctx->F;
    const auto q = static_cast<std::uint64_t>(S.ctx->q);
    LeviDatum L;
    L.ctx = S.ctx;
    L.v0 = S.v0;
    for (std::size_t j = 0; j < S.blocks.size(); ++j) {
        const auto& b = S.blocks[j];
        if (std::find(T.flagged.begin(), T.flagged.end(), j) == T.flagged.end()) {
            L.v0 = linalg::hcat(L.v0, b.basis);
            continue;
        }
        // Restrict the F_{q^d} action to F_{q^e}: the unique subgroup of order q^e - 1.
        IsotypicBlock nb;
        nb.d = T.e;
        nb.m = b.basis.cols / T.e;
        nb.basis = b.basis;
        nb.field_gen = linalg::pow(F, b.field_gen, (ipow(q, b.d) - 1) / (ipow(q, T.e) - 1));
        L.blocks.push_back(std::move(nb));
    }
    if (T.v0_flagged && S.n0() > 0) {
        IsotypicBlock nb;
        nb.d = 1;
        nb.m = S.n0();
        nb.basis = S.v0;
        nb.field_gen = linalg::scale(F, F.primitive(), FqMatrix::identity(S.n0()));
        L.blocks.push_back(std::move(nb));
        L.v0 = FqMatrix(S.ctx->n, 0);
    }
    L.canonicalize();
    return L;
}

Subgroup z_ell_part(const LeviDatum& L, int ell) { return ell_part_subgroup(L.center_subgroup(), ell); }

ClosureEngine::ClosureEngine(ContextPtr ctx, int ell, int e) : ctx_(std::move(ctx)), ell_(ell), e_(e) {
    if (!is_prime(static_cast<std::uint64_t>(ell))) throw Error(ErrorKind::InvalidPrime, "ell must be prime");
    if (ctx_->q % ell == 0) throw Error(ErrorKind::DefiningCharacteristic, "ell divides q");
    if (e < 1) throw Error(ErrorKind::InvalidArgument, "e must be positive");
}

LeviDatum ClosureEngine::split_levi(const Subgroup& A) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = levi_cache_.find(A.fingerprint());
        if (it != levi_cache_.end())
            for (const auto& [S, L] : it->second)
                if (S == A) return L;
    }
    if (!A.is_abelian()) throw Error(ErrorKind::NotAbelian, "closure operators need an abelian subgroup");
    if (ell_part(BigInt(A.order()), ell_) != BigInt(A.order()))
        throw Error(ErrorKind::InvalidArgument, "closure operators need an ell-subgroup");
    LeviDatum L = e_split_centralizer(phi_e_center_part(connected_centralizer(ctx_, A), e_));
    std::lock_guard<std::mutex> lk(mu_);
    levi_cache_[A.fingerprint()].emplace_back(A, L);
    return L;
}

Subgroup ClosureEngine::gamma(const Subgroup& A) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = gamma_cache_.find(A.fingerprint());
        if (it != gamma_cache_.end())
            for (const auto& [S, g] : it->second)
                if (S == A) return g;
    }
    Subgroup g = z_ell_part(split_levi(A), ell_);
    std::lock_guard<std::mutex> lk(mu_);
    gamma_cache_[A.fingerprint()].emplace_back(A, g);
    return g;
}

Subgroup ClosureEngine::omega(const Subgroup& A) const { return product_subgroup(A, gamma(A)); }

EClosureReport ClosureEngine::stabilize(const Subgroup& A) const {
    EClosureReport r;
    r.input = A;
    r.gamma = gamma(A);
    r.omega = omega(A);
    r.e_closed = r.gamma == A;
    r.weakly_e_closed = r.omega == A;
    Subgroup W = A;
    for (;;) {
        Subgroup next = omega(W);
        if (next == W) break;
        W = next;
        if (++r.t > 64) throw Error(ErrorKind::InvalidArgument, "omega iteration did not stabilize");
    }
    r.weak_closure = W;
    Subgroup C = W;
    for (;;) {
        Subgroup next = gamma(C);
        if (next == C) break;
        C = next;
        if (++r.r > 64) throw Error(ErrorKind::InvalidArgument, "gamma iteration did not stabilize");
    }
    r.closure = C;
    return r;
}

Subgroup gamma(const ContextPtr& ctx, const Subgroup& A, int ell, int e) { return ClosureEngine(ctx, ell, e).gamma(A); }

Subgroup omega(const ContextPtr& ctx, const Subgroup& A, int ell, int e) { return ClosureEngine(ctx, ell, e).omega(A); }

int LeviEnumeration::find(const LeviDatum& L) const {
    auto it = by_key.find(L.key());
    if (it != by_key.end()) return it->second;
    auto id = poset->find(L.subgroup());
    return id ? *id : -1;
}

int LeviEnumeration::whole_id() const { return poset->size() - 1; }

LeviEnumeration enumerate_e_split_levis(const ContextPtr& ctx, int e, const Limits& limits) {
    const int n = ctx->n;
    if (e < 1 || e > n) throw Error(ErrorKind::InvalidArgument, "e must lie in [1, n]");
    const FiniteField& F = *ctx->F;
    const FqMatrix Ce = companion(F, ctx->tower->min_poly(ctx->tower->subfield_generator(e)));
    const MatrixGroup& G = *ctx->G;

    std::vector<LeviDatum> standard;
    for (int n0 = (e == 1 ? 0 : n); n0 >= 0; --n0) {
        if ((n - n0) % e != 0) continue;
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions((n - n0) / e, (n - n0) / e, cur, parts);
        for (const auto& bs : parts) {
            LeviDatum L;
            L.ctx = ctx;
            const FqMatrix I = FqMatrix::identity(n);
            int o = 0;
            for (int b : bs) {
                IsotypicBlock blk;
                blk.d = e;
                blk.m = b;
                blk.basis = linalg::columns(I, o, e * b);
                blk.field_gen = block_diag(std::vector<FqMatrix>(static_cast<std::size_t>(b), Ce));
                L.blocks.push_back(std::move(blk));
                o += e * b;
            }
            L.v0 = linalg::columns(I, o, n0);
            L.canonicalize();
            standard.push_back(std::move(L));
        }
    }

    struct Found {
        LeviDatum datum;
        std::size_t type;
    };
    std::vector<Found> found;
    std::unordered_set<std::string> seen;
    std::vector<std::size_t> orbit_size(standard.size(), 0);
    for (std::size_t t = 0; t < standard.size(); ++t) {
        std::deque<LeviDatum> queue{standard[t]};
        if (!seen.insert(standard[t].key()).second) continue;
        while (!queue.empty()) {
            LeviDatum L = std::move(queue.front());
            queue.pop_front();
            for (Elem g : G.generators()) {
                LeviDatum c = L.conjugate(g);
                if (seen.insert(c.key()).second) queue.push_back(std::move(c));
            }
            found.push_back({std::move(L), t});
            ++orbit_size[t];
            if (found.size() > limits.max_subgroups)
                throw Error(ErrorKind::TooManySubgroups, "too many e-split Levi subgroups");
        }
    }

    LeviEnumeration out;
    out.e = e;
    std::vector<Subgroup> subs;
    subs.reserve(found.size());
    for (const auto& f : found) subs.push_back(f.datum.subgroup());
    const Subgroup W = whole_group(ctx->G);
    for (std::size_t t = 0; t < standard.size(); ++t) {
        const std::size_t rep = static_cast<std::size_t>(
            std::find_if(found.begin(), found.end(), [&](const Found& f) { return f.type == t; }) - found.begin());
        const BigInt expected = BigInt(G.order()) / BigInt(normalizer_in(W, subs[rep]).order());
        if (expected != BigInt(orbit_size[t]))
            throw Error(ErrorKind::InvalidArgument, "Levi class size disagrees with the normalizer index");
    }
    out.poset = std::make_shared<SubgroupPoset>(ctx->G, subs);
    out.levis.resize(found.size());
    std::vector<char> filled(found.size(), 0);
    for (std::size_t i = 0; i < found.size(); ++i) {
        const int id = out.poset->require(subs[i]);
        out.by_key[found[i].datum.key()] = id;
        LeviEntry entry;
        entry.datum = found[i].datum;
        entry.subgroup = subs[i];
        entry.type = found[i].datum.type_string();
        entry.proper = subs[i].order() != G.order();
        out.count_by_type[entry.type] += 1;
        out.levis[static_cast<std::size_t>(id)] = std::move(entry);
        filled[static_cast<std::size_t>(id)] = 1;
    }
    if (std::count(filled.begin(), filled.end(), 1) != static_cast<long>(found.size()))
        throw Error(ErrorKind::InvalidArgument, "distinct Levi data share a subgroup");
    for (int r : out.poset->orbit_reps()) out.reps.push_back(static_cast<std::size_t>(r));
    return out;
}

std::vector<Subgroup> iota(const std::vector<LeviDatum>& chain, int ell) {
    std::vector<Subgroup> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(z_ell_part(*it, ell));
    return out;
}

std::vector<LeviDatum> delta(const ClosureEngine& eng, const std::vector<Subgroup>& chain) {
    std::vector<LeviDatum> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (!eng.is_e_closed(*it)) throw Error(ErrorKind::NotEClosed, "delta input term " + it->describe() + " is not e-closed");
        out.push_back(eng.split_levi(*it));
    }
    return out;
}

std::vector<HypothesisItem> hypothesis_check(int n, int q, int ell) {
    std::vector<HypothesisItem> items;
    auto add = [&](std::string name, bool pass, std::string detail) {
        items.push_back({std::move(name), pass, std::move(detail)});
    };
    const bool prime = ell > 1 && is_prime(static_cast<std::uint64_t>(ell));
    add("ell-prime", prime, std::to_string(ell));
    add("ell-odd", ell != 2, "ell = " + std::to_string(ell));
    add("ell-coprime-to-q", ell > 0 && q % ell != 0, "q = " + std::to_string(q));
    const auto g = gcd_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(q - 1));
    add("ell-coprime-to-sc-centre", ell > 0 && g % static_cast<std::uint64_t>(ell) != 0,
        "|Z(SL_n)^F| = gcd(n, q-1) = " + std::to_string(g));
    add("component-group-conditions", true, "connected centre, self-dual");
    add("ell-coprime-to-centre", ell > 0 && (q - 1) % ell != 0, "|Z(G)^F| = q-1 = " + std::to_string(q - 1));
    return items;
}

std::vector<HypothesisItem> hypothesis_check(const GLContext& ctx, int ell) { return hypothesis_check(ctx.n, ctx.q, ell); }

bool hypotheses_hold(const std::vector<HypothesisItem>& items) {
    return std::all_of(items.begin(), items.end(), [](const HypothesisItem& i) { return i.pass; });
}

}  // namespace brownlevi
