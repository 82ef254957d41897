#include "doctest.h"

#include "brownlevi/automorphism.hpp"
#include "brownlevi/poset.hpp"
#include "brownlevi/reductive.hpp"

#include <set>

using namespace brownlevi;

namespace {

const Limits kLimits{};

// All abelian ell-subgroups of G, or one per conjugacy class.
std::vector<Subgroup> abelian_ell_subgroups(const ContextPtr& ctx, int ell, bool reps_only = false) {
    auto P = enumerate_ell_subgroups(ctx->G, ell, trivial_subgroup(ctx->G), kLimits);
    std::vector<Subgroup> out;
    for (int i = 0; i < P->size(); ++i)
        if (P->member(i).is_abelian() && (!reps_only || P->orbit_reps()[static_cast<std::size_t>(P->orbit_of(i))] == i))
            out.push_back(P->member(i));
    return out;
}

// Brute-force oracles over the whole group are run on class representatives for the larger groups.
bool reps_only(const ContextPtr& ctx) { return ctx->G->order() > 100000; }

// gamma computed from brute-force centralizers and centres only.
Subgroup gamma_brute(const ContextPtr& ctx, const Subgroup& A, int ell, int e) {
    const Subgroup W = whole_group(ctx->G);
    const Subgroup Z = center(centralizer_in(W, A));
    const auto N = static_cast<std::uint64_t>(ell_part(cyclotomic_poly(e).evaluate(ctx->q), ell));
    const Subgroup Y = filter_subgroup(Z, [&](Elem z) { return ctx->G->pow(z, N) == ctx->G->identity(); });
    return ell_part_subgroup(center(centralizer_in(W, Y)), ell);
}

Subgroup element_order_subgroup(const ContextPtr& ctx, std::uint64_t order, const std::function<bool(const LeviDatum&)>& want) {
    for (Elem x = 0; x < ctx->G->order(); ++x) {
        if (ctx->G->element_order(x) != order) continue;
        const Subgroup A = subgroup_closure(ctx->G, {x});
        if (want(connected_centralizer(ctx, A))) return A;
    }
    return Subgroup();
}

Subgroup order3_subgroup(const Subgroup& S) {
    for (Elem x : S.elements())
        if (S.ambient().element_order(x) == 3) return subgroup_closure(S.ambient_ptr(), {x});
    return Subgroup();
}

struct Case {
    int n, q, ell;
};

const std::vector<Case> kCases{{2, 4, 5}, {3, 2, 7}, {4, 2, 3}, {2, 8, 3}, {2, 4, 3}, {3, 4, 7}};

}  // namespace

TEST_CASE("connected centralizers") {
    auto ctx = GLContext::make(2, 4, kLimits);
    const Subgroup W = whole_group(ctx->G);
    const auto L1 = connected_centralizer(ctx, trivial_subgroup(ctx->G));
    REQUIRE(L1.blocks.size() == 1);
    CHECK(L1.blocks[0].d == 1);
    CHECK(L1.blocks[0].m == 2);
    CHECK(L1.subgroup() == W);
    const Subgroup A5 = sylow_subgroup(W, 5);
    const auto L5 = connected_centralizer(ctx, A5);
    REQUIRE(L5.blocks.size() == 1);
    CHECK(L5.blocks[0].d == 2);
    CHECK(L5.blocks[0].m == 1);
    CHECK(L5.subgroup().order() == 15);
    CHECK(L5.subgroup() == centralizer_in(W, A5));
    const Subgroup Z3 = center(W);
    REQUIRE(Z3.order() == 3);
    const auto Lz = connected_centralizer(ctx, Z3);
    REQUIRE(Lz.blocks.size() == 1);
    CHECK(Lz.blocks[0].d == 1);
    CHECK(Lz.blocks[0].m == 2);
    CHECK(Lz.subgroup() == W);
    auto ctx2 = GLContext::make(2, 2, kLimits);
    CHECK_THROWS_AS(connected_centralizer(ctx2, whole_group(ctx2->G)), Error);
    CHECK_THROWS_AS(connected_centralizer(ctx, sylow_subgroup(W, 2)), Error);
}

TEST_CASE("connected centralizer equals the brute-force centralizer") {
    for (const auto& c : kCases) {
        auto ctx = GLContext::make(c.n, c.q, kLimits);
        const Subgroup W = whole_group(ctx->G);
        for (const auto& A : abelian_ell_subgroups(ctx, c.ell, reps_only(ctx))) {
            const auto L = connected_centralizer(ctx, A);
            const Subgroup C = L.subgroup();
            CHECK(C == centralizer_in(W, A));
            CHECK(BigInt(C.order()) == levi_order_polynomial(L).evaluate(c.q));
            for (std::size_t j = 0; j < L.blocks.size(); ++j) {
                const auto& b = L.blocks[j];
                std::uint64_t qd = 1;
                for (int i = 0; i < b.d; ++i) qd *= static_cast<std::uint64_t>(c.q);
                CHECK(ctx->G->element_order(ctx->element(L.scalar_action(j))) == qd - 1);
                for (Elem g : C.generators()) CHECK(L.contains(g));
            }
        }
    }
}

TEST_CASE("Levi order polynomials") {
    auto ctx = GLContext::make(2, 4, kLimits);
    const auto T = connected_centralizer(ctx, sylow_subgroup(whole_group(ctx->G), 5));
    CHECK(levi_order_polynomial(T).to_string() == "x^2 - 1");
    const auto G = connected_centralizer(ctx, trivial_subgroup(ctx->G));
    CHECK(levi_order_polynomial(G) == IntPolynomial::monomial(1) * (IntPolynomial::monomial(1) - IntPolynomial::constant(1)) *
                                          (IntPolynomial::monomial(1) - IntPolynomial::constant(1)) *
                                          (IntPolynomial::monomial(1) + IntPolynomial::constant(1)));
    auto ctx4 = GLContext::make(4, 2, kLimits);
    const Subgroup A = element_order_subgroup(ctx4, 3, [](const LeviDatum& L) { return L.blocks.size() == 2; });
    REQUIRE(A.valid());
    const auto L = connected_centralizer(ctx4, A);
    CHECK(levi_order_polynomial(L).evaluate(2) == 18);
    CHECK(L.subgroup().order() == 18);
}

TEST_CASE("Phi_e parts and e-split centralizers") {
    auto ctx = GLContext::make(2, 4, kLimits);
    const Subgroup W = whole_group(ctx->G);
    const auto T = connected_centralizer(ctx, sylow_subgroup(W, 5));
    const auto t2 = phi_e_center_part(T, 2);
    CHECK(t2.flagged.size() == 1);
    REQUIRE(t2.fixed_point_orders.size() == 1);
    CHECK(t2.fixed_point_orders[0] == 5);
    const auto L = e_split_centralizer(t2);
    CHECK(L.subgroup() == T.subgroup());
    CHECK(L.subgroup() == centralizer_in(W, z_ell_part(L, 5)));
    const auto G = connected_centralizer(ctx, trivial_subgroup(ctx->G));
    const auto g2 = phi_e_center_part(G, 2);
    CHECK(g2.flagged.empty());
    CHECK(!g2.v0_flagged);
    const auto LG = e_split_centralizer(g2);
    CHECK(LG.blocks.empty());
    CHECK(LG.n0() == 2);
    CHECK(LG.subgroup() == W);
    const auto g1 = phi_e_center_part(G, 1);
    REQUIRE(g1.flagged.size() == 1);
    CHECK(g1.fixed_point_orders[0] == 3);

    auto ctx4 = GLContext::make(4, 2, kLimits);
    const Subgroup A = element_order_subgroup(ctx4, 3, [](const LeviDatum& X) {
        return X.blocks.size() == 2 && X.blocks[0].d == 1 && X.blocks[0].m == 2 && X.blocks[1].d == 2 && X.blocks[1].m == 1;
    });
    REQUIRE(A.valid());
    const auto L4 = e_split_centralizer(phi_e_center_part(connected_centralizer(ctx4, A), 2));
    CHECK(L4.type_string() == "GL1(4)xGL2(2)");
    CHECK(L4.subgroup().order() == 18);
    const Subgroup z = z_ell_part(L4, 3);
    CHECK(z.order() == 3);
    CHECK(z == A);
}

TEST_CASE("z_ell_part") {
    auto ctx = GLContext::make(2, 4, kLimits);
    const auto G = e_split_centralizer(phi_e_center_part(connected_centralizer(ctx, trivial_subgroup(ctx->G)), 2));
    CHECK(z_ell_part(G, 5).is_trivial());
    const auto T = connected_centralizer(ctx, sylow_subgroup(whole_group(ctx->G), 5));
    CHECK(z_ell_part(T, 5).order() == 5);
    auto ctx4 = GLContext::make(4, 2, kLimits);
    const auto lev = enumerate_e_split_levis(ctx4, 2, kLimits);
    for (const auto& entry : lev.levis)
        if (entry.type == "GL2(4)") {
            const Subgroup z = z_ell_part(entry.datum, 3);
            CHECK(z.order() == 3);
            CHECK(z.is_subgroup_of(center(entry.subgroup)));
        }
}

TEST_CASE("e-split Levi enumeration") {
    auto proper_count = [](const LeviEnumeration& e, std::uint64_t order) {
        std::size_t k = 0;
        for (const auto& l : e.levis)
            if (l.proper && l.subgroup.order() == order) ++k;
        return k;
    };
    auto c24 = GLContext::make(2, 4, kLimits);
    const auto e2 = enumerate_e_split_levis(c24, 2, kLimits);
    CHECK(e2.levis.size() == 7);
    CHECK(proper_count(e2, 15) == 6);
    CHECK(!e2.levis[static_cast<std::size_t>(e2.whole_id())].proper);
    const auto e1 = enumerate_e_split_levis(c24, 1, kLimits);
    CHECK(e1.levis.size() == 11);
    CHECK(proper_count(e1, 9) == 10);
    auto c32 = GLContext::make(3, 2, kLimits);
    const auto e3 = enumerate_e_split_levis(c32, 3, kLimits);
    CHECK(e3.levis.size() == 9);
    CHECK(proper_count(e3, 7) == 8);
    auto c42 = GLContext::make(4, 2, kLimits);
    const auto e42 = enumerate_e_split_levis(c42, 2, kLimits);
    CHECK(e42.levis.size() == 897);
    CHECK(e42.count_by_type.at("GL1(4)xGL2(2)") == 560);
    CHECK(e42.count_by_type.at("GL2(4)") == 56);
    CHECK(e42.count_by_type.at("GL1(4)xGL1(4)") == 280);
    CHECK(e42.reps.size() == 4);
    Limits tiny;
    tiny.max_subgroups = 100;
    CHECK_THROWS_AS(enumerate_e_split_levis(c42, 2, tiny), Error);
}

TEST_CASE("Levi subgroups are centralizers of their central ell-parts") {
    for (const auto& c : kCases) {
        if (!hypotheses_hold(hypothesis_check(c.n, c.q, c.ell))) continue;
        auto ctx = GLContext::make(c.n, c.q, kLimits);
        const int e = e_ell(c.ell, c.q);
        const Subgroup W = whole_group(ctx->G);
        const auto lev = enumerate_e_split_levis(ctx, e, kLimits);
        for (std::size_t i = 0; i < lev.levis.size(); ++i) {
            const auto& entry = lev.levis[i];
            const bool rep = std::find(lev.reps.begin(), lev.reps.end(), i) != lev.reps.end();
            if (rep || !reps_only(ctx)) CHECK(entry.subgroup == centralizer_in(W, z_ell_part(entry.datum, c.ell)));
            CHECK(lev.find(entry.datum) == lev.poset->require(entry.subgroup));
        }
    }
}

TEST_CASE("gamma agrees with the brute-force closure") {
    for (const auto& c : kCases) {
        auto ctx = GLContext::make(c.n, c.q, kLimits);
        const int e = e_ell(c.ell, c.q);
        ClosureEngine eng(ctx, c.ell, e);
        for (const auto& A : abelian_ell_subgroups(ctx, c.ell, reps_only(ctx))) CHECK(eng.gamma(A) == gamma_brute(ctx, A, c.ell, e));
    }
}

TEST_CASE("closure operator properties") {
    for (const auto& c : kCases) {
        if (!hypotheses_hold(hypothesis_check(c.n, c.q, c.ell))) continue;
        auto ctx = GLContext::make(c.n, c.q, kLimits);
        const int e = e_ell(c.ell, c.q);
        ClosureEngine eng(ctx, c.ell, e);
        const Subgroup W = whole_group(ctx->G);
        const Subgroup ZG = ell_part_subgroup(center(W), c.ell);
        const auto abel = abelian_ell_subgroups(ctx, c.ell);
        const auto autos = standard_automorphisms(ctx->G);
        for (const auto& A : abel) {
            const Subgroup g = eng.gamma(A);
            const Subgroup w = eng.omega(A);
            CHECK(ZG.is_subgroup_of(g));
            for (Elem x : A.generators())
                for (Elem y : g.generators()) CHECK(ctx->G->commutator(x, y) == ctx->G->identity());
            CHECK(A.is_subgroup_of(w));
            CHECK(g.is_subgroup_of(w));
            CHECK((g.is_subgroup_of(ZG) == A.is_subgroup_of(ZG)));
            if (eng.is_e_closed(A)) CHECK(eng.is_weakly_e_closed(A));
            if (eng.is_weakly_e_closed(A)) CHECK(eng.is_weakly_e_closed(g));
            for (const auto& a : autos) {
                const Subgroup aA = apply_automorphism(a, A);
                CHECK(eng.gamma(aA) == apply_automorphism(a, g));
                CHECK(eng.omega(aA) == apply_automorphism(a, w));
            }
            const auto rep = eng.stabilize(A);
            CHECK(rep.weak_closure == eng.omega(rep.weak_closure));
            CHECK(eng.is_e_closed(rep.closure));
            CHECK(rep.t <= 64);
        }
        for (const auto& A : abel)
            for (const auto& B : abel)
                if (A.is_subgroup_of(B)) {
                    CHECK(eng.gamma(A).is_subgroup_of(eng.gamma(B)));
                    CHECK(eng.omega(A).is_subgroup_of(eng.omega(B)));
                }
    }
}

TEST_CASE("e-closed subgroups are the central ell-parts of e-split Levis") {
    for (const auto& c : kCases) {
        if (!hypotheses_hold(hypothesis_check(c.n, c.q, c.ell))) continue;
        auto ctx = GLContext::make(c.n, c.q, kLimits);
        const int e = e_ell(c.ell, c.q);
        ClosureEngine eng(ctx, c.ell, e);
        const auto lev = enumerate_e_split_levis(ctx, e, kLimits);
        std::set<Subgroup> closed, centres;
        for (const auto& A : abelian_ell_subgroups(ctx, c.ell))
            if (eng.is_e_closed(A)) {
                closed.insert(A);
                const int id = lev.poset->find(connected_centralizer(ctx, A).subgroup()).value_or(-1);
                CHECK(id >= 0);
            }
        for (const auto& entry : lev.levis) centres.insert(z_ell_part(entry.datum, c.ell));
        CHECK(closed == centres);
        CHECK(closed.size() == lev.levis.size());
    }
}

TEST_CASE("closure classification sweeps") {
    auto ctx = GLContext::make(4, 2, kLimits);
    ClosureEngine eng(ctx, 3, 2);
    std::size_t closed = 0, weak_only = 0, neither = 0;
    for (const auto& A : abelian_ell_subgroups(ctx, 3)) {
        const auto r = eng.stabilize(A);
        if (r.e_closed) {
            ++closed;
            CHECK(r.t == 0);
            CHECK(r.r == 0);
        } else if (r.weakly_e_closed) {
            ++weak_only;
        } else {
            ++neither;
        }
    }
    // Every abelian 3-subgroup of GL_4(2) is the central 3-part of its centralizer.
    CHECK(closed == 897);
    CHECK(weak_only == 0);
    CHECK(neither == 0);

    // In GL_2(8) the order-3 subgroup sits in the non-split torus of order 63.
    auto c28 = GLContext::make(2, 8, kLimits);
    ClosureEngine e28(c28, 3, 2);
    const Subgroup S = sylow_subgroup(whole_group(c28->G), 3);
    REQUIRE(S.order() == 9);
    const Subgroup C3 = order3_subgroup(S);
    REQUIRE(C3.order() == 3);
    CHECK(e28.gamma(C3) == S);
    const auto r = e28.stabilize(C3);
    CHECK(!r.e_closed);
    CHECK(!r.weakly_e_closed);
    CHECK(r.t == 1);
    CHECK(r.r == 0);
    CHECK(r.weak_closure == S);
    CHECK(r.closure == S);
}

TEST_CASE("iota and delta") {
    auto ctx = GLContext::make(2, 4, kLimits);
    const Subgroup W = whole_group(ctx->G);
    ClosureEngine eng(ctx, 5, 2);
    const auto d1 = delta(eng, {trivial_subgroup(ctx->G)});
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].subgroup() == W);
    const auto lev = enumerate_e_split_levis(ctx, 2, kLimits);
    const LeviDatum torus = lev.levis.front().datum;
    const LeviDatum whole = lev.levis.back().datum;
    const auto io = iota({torus, whole}, 5);
    REQUIRE(io.size() == 2);
    CHECK(io[0].is_trivial());
    CHECK(io[1].order() == 5);

    auto c28 = GLContext::make(2, 8, kLimits);
    ClosureEngine e28(c28, 3, 2);
    const Subgroup S = sylow_subgroup(whole_group(c28->G), 3);
    const Subgroup C3 = order3_subgroup(S);
    CHECK_THROWS_AS(delta(e28, {trivial_subgroup(c28->G), C3}), Error);
}

TEST_CASE("iota and delta are inverse on the Levi complex of GL_4(2)") {
    auto ctx = GLContext::make(4, 2, kLimits);
    ClosureEngine eng(ctx, 3, 2);
    const auto lev = enumerate_e_split_levis(ctx, 2, kLimits);
    std::vector<int> all(static_cast<std::size_t>(lev.poset->size()));
    for (int i = 0; i < lev.poset->size(); ++i) all[static_cast<std::size_t>(i)] = i;
    const auto cx = order_complex(lev.poset, all, Anchor::Top, lev.whole_id(), kLimits);
    auto sp = enumerate_ell_subgroups(ctx->G, 3, trivial_subgroup(ctx->G), kLimits);
    std::size_t checked = 0;
    for (const auto& chain : cx.chains) {
        std::vector<LeviDatum> ls;
        for (int v : chain) ls.push_back(lev.levis[static_cast<std::size_t>(v)].datum);
        const auto as = iota(ls, 3);
        CHECK(as.size() == ls.size());
        const auto back = delta(eng, as);
        REQUIRE(back.size() == chain.size());
        Chain ids;
        for (const auto& L : back) ids.push_back(lev.find(L));
        CHECK(ids == chain);
        Chain aids;
        for (const auto& A : as) aids.push_back(sp->require(A));
        CHECK(chain_stabilizer(*lev.poset, chain) == chain_stabilizer(*sp, aids));
        ++checked;
    }
    CHECK(checked == cx.chains.size());
}

TEST_CASE("hypothesis check") {
    CHECK(hypotheses_hold(hypothesis_check(2, 4, 5)));
    const auto f = hypothesis_check(2, 7, 3);
    CHECK(!hypotheses_hold(f));
    for (const auto& i : f)
        if (i.name == "ell-coprime-to-centre") CHECK(!i.pass);
    const auto two = hypothesis_check(2, 4, 2);
    CHECK(!hypotheses_hold(two));
    for (const auto& i : two)
        if (i.name == "ell-odd") CHECK(!i.pass);
}
