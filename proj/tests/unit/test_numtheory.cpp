#include "doctest.h"

#include "brownlevi/error.hpp"
#include "brownlevi/numtheory.hpp"

using namespace brownlevi;

namespace {

int mobius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

// Phi_n(q) from the Moebius product over divisors.
BigInt phi_value_mobius(int n, int q) {
    BigInt num = 1, den = 1;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        BigInt t = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(d)) - 1;
        const int mu = mobius(n / d);
        if (mu == 1) num *= t;
        if (mu == -1) den *= t;
    }
    return num / den;
}

int brute_order(int q, int ell) {
    int e = 1;
    long long x = q % ell;
    while (x != 1) {
        x = x * q % ell;
        ++e;
    }
    return e;
}

}  // namespace

TEST_CASE("cyclotomic coefficients") {
    CHECK(cyclotomic_poly(1) == IntPolynomial({-1, 1}));
    CHECK(cyclotomic_poly(2) == IntPolynomial({1, 1}));
    CHECK(cyclotomic_poly(6) == IntPolynomial({1, -1, 1}));
    CHECK(cyclotomic_poly(6).to_string() == "x^2 - x + 1");
    CHECK(cyclotomic_poly(12) == IntPolynomial({1, 0, -1, 0, 1}));
}

TEST_CASE("cyclotomic values agree with the Moebius product") {
    for (int n = 1; n <= 30; ++n)
        for (int q : {2, 3, 4, 5, 7, 29}) CHECK(cyclotomic_poly(n).evaluate(q) == phi_value_mobius(n, q));
}

TEST_CASE("order polynomial of GL_n") {
    const auto f4 = cyclo_factor(order_poly_gl(4));
    CHECK(f4.x_exponent == 6);
    CHECK(f4.exponent_of(1) == 4);
    CHECK(f4.exponent_of(2) == 2);
    CHECK(f4.exponent_of(3) == 1);
    CHECK(f4.exponent_of(4) == 1);
    CHECK(f4.exponents.size() == 4);

    const auto f3 = cyclo_factor(order_poly_gl(3));
    CHECK(f3.x_exponent == 3);
    CHECK(f3.exponents == std::map<int, int>{{1, 3}, {2, 1}, {3, 1}});

    CHECK(order_poly_gl(2).evaluate(4) == 180);
    CHECK(order_poly_gl(3).evaluate(2) == 168);
    CHECK(order_poly_gl(4).evaluate(2) == 20160);
    CHECK(order_poly_gl(2).evaluate(29) == 682080);
}

TEST_CASE("cyclotomic factorization reconstructs its source") {
    for (int n = 1; n <= 7; ++n) {
        const auto p = order_poly_gl(n);
        const auto f = cyclo_factor(p);
        CHECK(f.reconstruct() == p);
        // Exponent of Phi_d in the order polynomial of GL_n is floor(n / d).
        for (int d = 1; d <= n; ++d) CHECK(f.exponent_of(d) == n / d);
    }
    CHECK_THROWS_AS(cyclo_factor(IntPolynomial({1, 0, 1, 1})), Error);
    CHECK_THROWS_AS(cyclo_factor(IntPolynomial({2, 2})), Error);
}

TEST_CASE("e_ell") {
    CHECK(e_ell(5, 4) == 2);
    CHECK(e_ell(7, 2) == 3);
    CHECK(e_ell(13, 3) == 3);
    CHECK(e_ell(3, 2) == 2);
    CHECK_THROWS_AS(e_ell(2, 3), Error);
    CHECK_THROWS_AS(e_ell(3, 9), Error);
    CHECK_THROWS_AS(e_ell(9, 2), Error);
    for (int ell : {3, 5, 7, 11, 13})
        for (int q = 2; q < 60; ++q)
            if (q % ell) CHECK(e_ell(ell, q) == brute_order(q, ell));
}

TEST_CASE("E_ell lists exactly the d with ell | Phi_d(q)") {
    CHECK(E_ell(5, 4, 12) == std::vector<int>{2, 10});
    CHECK(E_ell(3, 4, 10) == std::vector<int>{1, 3, 9});
    CHECK(E_ell(13, 3, 40) == std::vector<int>{3, 39});
    for (int ell : {3, 5, 7})
        for (int q : {2, 4, 5, 8, 11}) {
            if (q % ell == 0) continue;
            const auto E = E_ell(ell, q, 40);
            for (int d = 1; d <= 40; ++d) {
                const bool divides = cyclotomic_poly(d).evaluate(q) % ell == 0;
                CHECK(divides == (std::find(E.begin(), E.end(), d) != E.end()));
            }
        }
}

TEST_CASE("ell_part and phi_valuation") {
    CHECK(ell_part(180, 5) == 5);
    CHECK(ell_part(48, 2) == 16);
    CHECK(ell_part(21, 5) == 1);
    CHECK(ell_valuation(81, 3) == 4);
    CHECK(phi_valuation(order_poly_gl(4), 2) == 2);
    CHECK(phi_valuation(order_poly_gl(2), 2) == 1);
    CHECK(phi_valuation(order_poly_gl(2), 4) == 0);
}

TEST_CASE("predicted Sylow order matches the ell-part of |GL_n(q)|") {
    CHECK(predicted_sylow_order(4, 2, 3) == 9);
    CHECK(predicted_sylow_order(2, 4, 5) == 5);
    CHECK(predicted_sylow_order(2, 7, 5) == 1);
    for (int n = 1; n <= 6; ++n)
        for (int q : {2, 3, 4, 5, 7, 8, 9})
            for (int ell : {3, 5, 7, 11, 13}) {
                if (q % ell == 0) continue;
                CHECK(predicted_sylow_order(n, q, ell) == ell_part(order_poly_gl(n).evaluate(q), ell));
            }
}
