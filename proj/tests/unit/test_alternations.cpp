#include "doctest.h"

#include "brownlevi/alternations.hpp"

using namespace brownlevi;

namespace {

const Limits kLimits{};

FqMatrix mat(int n, std::initializer_list<int> v) {
    FqMatrix m(n, n);
    int i = 0;
    for (int x : v) m.a[i++] = static_cast<std::uint8_t>(x);
    return m;
}

GroupPtr dihedral8() { return build_from_generators(3, 2, {mat(2, {0, 2, 1, 0}), mat(2, {0, 1, 1, 0})}, "D8"); }
GroupPtr quaternion8() { return build_from_generators(3, 2, {mat(2, {0, 2, 1, 0}), mat(2, {1, 1, 1, 2})}, "Q8"); }
// C27 inside GL_1(109); 6 generates F_109^x, so 6^4 has order 27.
GroupPtr cyclic27() { return build_from_generators(109, 1, {mat(1, {97})}, "C27"); }

struct Setup {
    PosetPtr P;
    ChainComplex cx;
    int anchor;
};

Setup anchored(const GroupPtr& G, int ell, const Subgroup& Z) {
    auto P = enumerate_ell_subgroups(G, ell, Z, kLimits);
    std::vector<int> all(static_cast<std::size_t>(P->size()));
    for (int i = 0; i < P->size(); ++i) all[static_cast<std::size_t>(i)] = i;
    const int a = P->require(Z);
    return {P, order_complex(P, all, Anchor::Bottom, a, kLimits), a};
}

AlternationReport sweep(AlternationKind kind, const Setup& s, std::shared_ptr<const ClosureOracle> O) {
    const auto map = make_alternation(kind, s.P, O);
    const auto dom = alternation_domain(kind, s.P, O);
    return verify_alternation(map, domain_chains(s.cx, dom), dom.in_prime, *s.P, standard_automorphisms(s.P->group()));
}

std::shared_ptr<const ClosureOracle> engine_oracle(const ContextPtr& ctx, const PosetPtr& P, int ell) {
    return std::make_shared<EngineOracle>(P, std::make_shared<ClosureEngine>(ctx, ell, e_ell(ell, ctx->q)));
}

}  // namespace

TEST_CASE("phi_abelian on D8") {
    auto G = dihedral8();
    REQUIRE(G->order() == 8);
    const auto s = anchored(G, 2, trivial_subgroup(G));
    const Subgroup W = whole_group(G);
    const int one = s.anchor, top = s.P->require(W), c2 = s.P->require(commutator_subgroup(W));
    CHECK(s.P->member(c2).order() == 2);
    CHECK(phi_abelian(*s.P, {one, top}) == Chain{one, c2, top});
    CHECK(phi_abelian(*s.P, {one, c2, top}) == Chain{one, top});
    for (int v = 0; v < s.P->size(); ++v)
        if (s.P->member(v).order() == 4 && s.P->member(v).is_abelian()) {
            CHECK_THROWS_AS(phi_abelian(*s.P, {one, v}), Error);
            try {
                phi_abelian(*s.P, {one, v});
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::InDomain);
            }
        }
}

TEST_CASE("phi_abelian sweeps") {
    for (auto [G, ell] : {std::pair{dihedral8(), 2}, std::pair{quaternion8(), 2}, std::pair{build_sym(4), 2},
                          std::pair{build_gl(3, 2), 2}, std::pair{build_sym(5), 2}}) {
        const auto s = anchored(G, ell, trivial_subgroup(G));
        const auto r = sweep(AlternationKind::Abelian, s, nullptr);
        CHECK_MESSAGE(r.pass, r.failure);
        CHECK(r.domain_size > 0);
        CHECK(r.up == r.down);
        for (const auto& c : s.cx.chains) {
            if (alternation_domain(AlternationKind::Abelian, s.P, nullptr).in_prime(c)) continue;
            CHECK(phi_abelian(*s.P, c).back() == c.back());
        }
    }
    // Over Z(Q8) every 2-subgroup is abelian modulo the anchor, so the domain is empty.
    auto Q = quaternion8();
    const auto s = anchored(Q, 2, center(whole_group(Q)));
    const auto r = sweep(AlternationKind::Abelian, s, nullptr);
    CHECK(r.pass);
    CHECK(r.domain_size == 0);
}

TEST_CASE("verify_alternation rejects the identity") {
    const auto s = anchored(dihedral8(), 2, trivial_subgroup(dihedral8()));
    AlternationMap id{"identity", [](const Chain& c) { return c; }};
    const auto dom = alternation_domain(AlternationKind::Abelian, s.P, nullptr);
    const auto r = verify_alternation(id, domain_chains(s.cx, dom), dom.in_prime, *s.P, {});
    CHECK(!r.pass);
    CHECK(r.failure.find("dimension") != std::string::npos);
}

TEST_CASE("phi_weak in GL_2(8) at 3") {
    auto ctx = GLContext::make(2, 8, kLimits);
    const auto s = anchored(ctx->G, 3, trivial_subgroup(ctx->G));
    REQUIRE(s.P->size() == 57);
    auto O = engine_oracle(ctx, s.P, 3);
    const Subgroup S = sylow_subgroup(whole_group(ctx->G), 3);
    Subgroup T;
    for (Elem x : S.elements())
        if (ctx->G->element_order(x) == 3) T = subgroup_closure(ctx->G, {x});
    const int one = s.anchor, c3 = s.P->require(T), c9 = s.P->require(S);
    CHECK(!O->weakly_e_closed(c3));
    CHECK(O->e_closed(c9));
    CHECK(phi_weak(*O, {one, c3}) == Chain{one, c3, c9});
    CHECK(phi_weak(*O, {one, c3, c9}) == Chain{one, c3});
    CHECK_THROWS_AS(phi_weak(*O, {one, c9}), Error);
    CHECK_THROWS_AS(phi_weak(*O, {one}), Error);
    CHECK_THROWS_AS(phi_eclosed(*O, {one, c9}), Error);
    const auto r = sweep(AlternationKind::Weak, s, O);
    CHECK_MESSAGE(r.pass, r.failure);
    // One pair {1 < C3} <-> {1 < C3 < C9} per Sylow 3-subgroup.
    CHECK(r.domain_size == 56);
    const auto rc = sweep(AlternationKind::Composite, s, O);
    CHECK_MESSAGE(rc.pass, rc.failure);
    CHECK(rc.domain_size == 56);
    CHECK(phi_composite(*O, {one, c3}) == phi_weak(*O, {one, c3}));
}

TEST_CASE("phi_eclosed with an explicit closure table") {
    auto G = cyclic27();
    REQUIRE(G->order() == 27);
    const auto s = anchored(G, 3, trivial_subgroup(G));
    REQUIRE(s.P->size() == 4);
    // gamma(1) = 1, gamma(C3) = C3, gamma(C9) = gamma(C27) = C3.
    auto O = std::make_shared<TableOracle>(s.P, std::vector<int>{0, 1, 1, 1});
    CHECK(O->weakly_e_closed(2));
    CHECK(!O->e_closed(2));
    CHECK(phi_eclosed(*O, {0, 2}) == Chain{0, 1, 2});
    CHECK(phi_eclosed(*O, {0, 1, 2}) == Chain{0, 2});
    CHECK(phi_eclosed(*O, {0, 2, 3}) == Chain{0, 1, 2, 3});
    CHECK_THROWS_AS(phi_eclosed(*O, {0, 1}), Error);
    const auto r = sweep(AlternationKind::EClosed, s, O);
    CHECK_MESSAGE(r.pass, r.failure);
    CHECK(r.domain_size == 6);
    CHECK(r.up == 3);
    const auto rc = sweep(AlternationKind::Composite, s, O);
    CHECK_MESSAGE(rc.pass, rc.failure);
    CHECK(phi_composite(*O, {0, 2}) == Chain{0, 1, 2});
}

TEST_CASE("phi_weak with an explicit closure table") {
    auto G = cyclic27();
    const auto s = anchored(G, 3, trivial_subgroup(G));
    // gamma(C3) = C9 so omega climbs C3 -> C9; everything else is closed.
    auto O = std::make_shared<TableOracle>(s.P, std::vector<int>{0, 2, 2, 3});
    CHECK(O->weak_closure(1) == 2);
    const auto r = sweep(AlternationKind::Weak, s, O);
    CHECK_MESSAGE(r.pass, r.failure);
    CHECK(r.domain_size == 4);
    const auto rc = sweep(AlternationKind::Composite, s, O);
    CHECK_MESSAGE(rc.pass, rc.failure);
}

TEST_CASE("composite alternation dispatch") {
    // In S4 at 2 with every abelian 2-subgroup declared e-closed only the phi_1 branch is live.
    auto G = build_sym(4);
    const auto s = anchored(G, 2, trivial_subgroup(G));
    std::vector<int> ident(static_cast<std::size_t>(s.P->size()));
    for (int i = 0; i < s.P->size(); ++i) ident[static_cast<std::size_t>(i)] = i;
    auto O = std::make_shared<TableOracle>(s.P, ident);
    const auto r = sweep(AlternationKind::Composite, s, O);
    CHECK_MESSAGE(r.pass, r.failure);
    const auto r1 = sweep(AlternationKind::Abelian, s, nullptr);
    CHECK(r.domain_size == r1.domain_size);
    for (const auto& c : s.cx.chains) {
        bool nonabelian = false;
        for (int v : c) nonabelian = nonabelian || !s.P->member(v).is_abelian();
        if (nonabelian) CHECK(phi_composite(*O, c) == phi_abelian(*s.P, c));
        else CHECK_THROWS_AS(phi_composite(*O, c), Error);
    }
}

TEST_CASE("GL_4(2) at 3 has no chains outside the e-closed subcomplex") {
    auto ctx = GLContext::make(4, 2, kLimits);
    const auto s = anchored(ctx->G, 3, trivial_subgroup(ctx->G));
    auto O = engine_oracle(ctx, s.P, 3);
    for (auto kind : {AlternationKind::Weak, AlternationKind::EClosed, AlternationKind::Composite}) {
        const auto r = sweep(kind, s, O);
        CHECK(r.pass);
        CHECK(r.domain_size == 0);
    }
    CHECK_THROWS_AS(phi_composite(*O, {s.anchor}), Error);
}

TEST_CASE("cancellation sums and orbit-level vanishing") {
    auto ctx = GLContext::make(2, 8, kLimits);
    const auto s = anchored(ctx->G, 3, trivial_subgroup(ctx->G));
    auto O = engine_oracle(ctx, s.P, 3);
    const auto dom = alternation_domain(AlternationKind::Composite, s.P, O);
    std::vector<int> closed;
    for (int v = 0; v < s.P->size(); ++v)
        if (O->e_closed(v)) closed.push_back(v);
    const auto full = chains_of(s.cx);
    const auto sub = chains_of(order_complex(s.P, closed, Anchor::Bottom, s.anchor, kLimits));
    const std::vector<GroupFunction> fs{
        [](const Subgroup&) { return BigInt(1); },
        [](const Subgroup& H) { return BigInt(conjugacy_classes(H).k()); },
        [](const Subgroup& H) { return BigInt(conjugacy_classes(H).l_ell(3)); }};
    for (const auto& f : fs) {
        const auto sums = cancellation_sums(f, {&full, &sub});
        CHECK(sums[0] == sums[1]);
        CHECK(orbit_sum_where(full, f, [&](const Chain& c) { return !dom.in_prime(c); }) == 0);
    }
    CHECK(euler_characteristic(full.complex) == euler_characteristic(sub.complex));
}
