#include "doctest.h"

#include "brownlevi/complex.hpp"
#include "brownlevi/contractibility.hpp"
#include "brownlevi/homology.hpp"
#include "brownlevi/poset.hpp"

using namespace brownlevi;

namespace {

const Limits kLimits{};

FqMatrix mat(int n, std::initializer_list<int> v) {
    FqMatrix m(n, n);
    int i = 0;
    for (int x : v) m.a[i++] = static_cast<std::uint8_t>(x);
    return m;
}

GroupPtr quaternion8() { return build_from_generators(3, 2, {mat(2, {0, 2, 1, 0}), mat(2, {1, 1, 1, 2})}, "Q8"); }

// C9 inside GL_1(19), generated by 4.
GroupPtr cyclic9() { return build_from_generators(19, 1, {mat(1, {4})}, "C9"); }

ChainComplex brown(const GroupPtr& G, int ell) {
    auto P = enumerate_ell_subgroups(G, ell, trivial_subgroup(G), kLimits);
    const LPoset L = make_lposet(P, ell, trivial_subgroup(G), LPosetKind::SStar);
    return order_complex(P, L.vertices, Anchor::None, -1, kLimits);
}

// Every ell-subgroup found by brute force over cyclic-subgroup joins of G.
std::size_t count_ell_subgroups_brute(const GroupPtr& G, int ell) {
    const auto part = static_cast<std::uint64_t>(ell_part(BigInt(G->order()), ell));
    std::vector<Subgroup> found{trivial_subgroup(G)};
    for (std::size_t i = 0; i < found.size(); ++i)
        for (Elem x = 0; x < G->order(); ++x) {
            if (G->pow(x, part) != G->identity() || found[i].contains(x)) continue;
            Subgroup K = join_element(found[i], x);
            if (part % K.order() != 0 || static_cast<std::uint64_t>(ell_part(BigInt(K.order()), ell)) != K.order()) continue;
            if (std::find(found.begin(), found.end(), K) == found.end()) found.push_back(K);
        }
    return found.size();
}

}  // namespace

TEST_CASE("ell-subgroup enumeration agrees with brute force") {
    CHECK(enumerate_ell_subgroups(build_sym(4), 2, Subgroup(), kLimits)->size() == count_ell_subgroups_brute(build_sym(4), 2));
    CHECK(enumerate_ell_subgroups(build_gl(3, 2), 2, Subgroup(), kLimits)->size() ==
          count_ell_subgroups_brute(build_gl(3, 2), 2));
    CHECK(enumerate_ell_subgroups(build_sym(5), 3, Subgroup(), kLimits)->size() == 11);
    CHECK_THROWS_AS(enumerate_ell_subgroups(build_sym(6), 2, Subgroup(), Limits{2000000, 8}), Error);
}

TEST_CASE("Brown complex of GL_2(4) at 5") {
    const auto c = brown(build_gl(2, 4), 5);
    CHECK(c.vertices.size() == 6);
    CHECK(euler_characteristic(c) == 6);
    const auto t = chains_of(c);
    CHECK(t.orbits.size() == 1);
    CHECK(t.orbits[0].stabilizer.order() == 30);
}

TEST_CASE("Q8 over its centre") {
    auto G = quaternion8();
    const Subgroup W = whole_group(G);
    const Subgroup Z = center(W);
    REQUIRE(Z.order() == 2);
    auto P = enumerate_ell_subgroups(G, 2, Z, kLimits);
    CHECK(P->size() == 5);
    const auto ab = make_lposet(P, 2, Z, LPosetKind::Ab);
    CHECK(ab.vertices.size() == 4);
    for (int v : ab.vertices) CHECK((P->member(v) == Z || P->member(v).order() == 4));
    const auto abz = make_lposet(P, 2, Z, LPosetKind::AbZ);
    CHECK(abz.vertices.size() == 5);
    CHECK(make_lposet(P, 2, Z, LPosetKind::AbStar).vertices.size() == 3);
}

TEST_CASE("Euler characteristics of small complexes") {
    auto C9 = cyclic9();
    REQUIRE(C9->order() == 9);
    const auto c = brown(C9, 3);
    CHECK(c.vertices.size() == 2);
    CHECK(c.size() == 3);
    CHECK(euler_characteristic(c) == 1);
    CHECK(euler_characteristic(brown(build_sym(5), 3)) == 10);
}

TEST_CASE("alternating sum of k over the anchored complex of S3") {
    auto G = build_sym(3);
    auto P = enumerate_ell_subgroups(G, 3, Subgroup(), kLimits);
    const auto L = make_lposet(P, 3, trivial_subgroup(G), LPosetKind::SStar);
    const auto t = chains_of(order_complex(P, L.vertices, Anchor::Bottom, P->require(trivial_subgroup(G)), kLimits));
    const GroupFunction k = [](const Subgroup& H) { return BigInt(conjugacy_classes(H).k()); };
    CHECK(alternating_sum(t, k) == 0);
    CHECK(t.orbits.size() == 2);
}

TEST_CASE("anchor shift relates anchored and starred sums") {
    for (auto [G, ell] : {std::pair{build_sym(4), 2}, std::pair{build_gl(2, 4), 5}, std::pair{build_gl(3, 2), 7}}) {
        auto P = enumerate_ell_subgroups(G, ell, Subgroup(), kLimits);
        const auto L = make_lposet(P, ell, trivial_subgroup(G), LPosetKind::SStar);
        const int anchor = P->require(trivial_subgroup(G));
        const auto star = chains_of(order_complex(P, L.vertices, Anchor::None, -1, kLimits));
        const auto anch = chains_of(order_complex(P, L.vertices, Anchor::Bottom, anchor, kLimits));
        const GroupFunction k = [](const Subgroup& H) { return BigInt(conjugacy_classes(H).k()); };
        const GroupFunction one = [](const Subgroup&) { return BigInt(1); };
        const BigInt kG = conjugacy_classes(whole_group(G)).k();
        CHECK(alternating_sum(anch, k) == kG - alternating_sum(star, k));
        CHECK(alternating_sum(anch, one) == 1 - alternating_sum(star, one));
        CHECK(euler_characteristic(anch.complex) == 1 - euler_characteristic(star.complex));
    }
}

TEST_CASE("Brown congruence on small groups") {
    for (auto [G, ell] : {std::pair{build_sym(4), 2}, std::pair{build_sym(5), 2}, std::pair{build_sym(5), 3},
                          std::pair{build_gl(2, 4), 5}, std::pair{build_gl(3, 2), 7}, std::pair{build_gl(3, 2), 2}}) {
        const auto r = brown_congruence_check(G, ell, kLimits);
        CHECK(r.pass);
    }
}

TEST_CASE("Smith normal form") {
    std::vector<std::vector<BigInt>> m{{2, 4}, {6, 8}};
    CHECK(smith_diagonal(m) == std::vector<BigInt>{2, 4});
    std::vector<std::vector<BigInt>> z{{0, 0}, {0, 0}};
    CHECK(smith_diagonal(z).empty());
    std::vector<std::vector<BigInt>> r{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    CHECK(smith_diagonal(r) == std::vector<BigInt>{1, 1, 2});
    std::vector<std::vector<BigInt>> big{{BigInt("123456789012345678901234567890"), 0}, {0, 6}};
    const auto d = smith_diagonal(big);
    CHECK(d.size() == 2);
    CHECK(d[0] * d[1] == BigInt("740740734074074073407407407340"));
}

TEST_CASE("homology of Brown complexes") {
    // The 2-subgroup complex of GL_3(2) is homotopy equivalent to the building, a wedge of 8 circles.
    const auto c = brown(build_gl(3, 2), 2);
    const auto h = homology(c, kLimits);
    CHECK(h.reduced() == std::vector<long long>{0, 8, 0});
    CHECK(h.euler() == euler_characteristic(c));
    CHECK(h.torsion_computed);
    // O_2(S4) is nontrivial, so the complex is contractible.
    const auto h4 = homology(brown(build_sym(4), 2), kLimits);
    CHECK(h4.acyclic());
    const auto h5 = homology(brown(build_sym(5), 3), kLimits);
    CHECK(h5.betti == std::vector<long long>{10});
    for (auto [G, ell] : {std::pair{build_sym(5), 2}, std::pair{build_gl(4, 2), 3}}) {
        const auto b = brown(G, ell);
        const auto hb = homology(b, kLimits);
        CHECK(hb.euler() == euler_characteristic(b));
        for (const auto& t : hb.torsion) CHECK(t.empty());
    }
    Limits tiny;
    tiny.max_simplices = 5;
    CHECK_THROWS_AS(homology(c, tiny), Error);
}

TEST_CASE("fixed subcomplexes") {
    auto G = build_gl(2, 4);
    const auto c = brown(G, 5);
    const Subgroup P = sylow_subgroup(whole_group(G), 5);
    const auto f = fixed_subcomplex(c, P, kLimits);
    CHECK(f.vertices.size() == 1);
    CHECK(euler_characteristic(fixed_subcomplex(c, trivial_subgroup(G), kLimits)) == 6);
}

TEST_CASE("join contractibility") {
    auto G = build_sym(4);
    auto P = enumerate_ell_subgroups(G, 2, Subgroup(), kLimits);
    const auto L = make_lposet(P, 2, trivial_subgroup(G), LPosetKind::SStar);
    // O_2(S4) = V4 is normal, every p-subgroup joins with it.
    const Subgroup W = whole_group(G);
    const Subgroup V = commutator_subgroup(commutator_subgroup(W));
    const auto cert = join_contractibility_certificate(P, L.vertices, P->require(V), W, kLimits);
    CHECK(cert.pass);
    CHECK(cert.homology.acyclic());
    CHECK(cert.fixed_sets_checked > 1);
    // A Sylow 2-subgroup does not serve as a cone point.
    const Subgroup S = sylow_subgroup(W, 2);
    const auto bad = join_contractibility_certificate(P, L.vertices, P->require(S), normalizer_in(W, S), kLimits);
    CHECK(!bad.pass);
    CHECK(bad.failing_vertex >= 0);
}
