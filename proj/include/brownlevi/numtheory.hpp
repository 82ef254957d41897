#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace brownlevi {

using BigInt = boost::multiprecision::cpp_int;

// Dense univariate polynomial over the integers, coefficient i multiplies x^i.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial monomial(int degree, const BigInt& c = 1);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt coeff(int i) const;
    BigInt leading() const;
    BigInt evaluate(const BigInt& x) const;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    // Division by a monic divisor. Returns false if the remainder is nonzero.
    bool divide_exact(const IntPolynomial& monic_divisor, IntPolynomial& quotient) const;
    // Substitute x -> x^k.
    IntPolynomial compose_power(int k) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

IntPolynomial cyclotomic_poly(int n);

// Order polynomial of GL_n: x^{n(n-1)/2} prod_{i=1..n} (x^i - 1).
IntPolynomial order_poly_gl(int n);

// Factorization x^{x_exponent} * prod_d Phi_d^{a_d}.
struct CycloFactorization {
    int x_exponent = 0;
    std::map<int, int> exponents;
    IntPolynomial source;

    int exponent_of(int d) const;
    IntPolynomial reconstruct() const;
};

CycloFactorization cyclo_factor(const IntPolynomial& p);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
// Returns (p, k) with q = p^k, or (0, 0) if q is not a prime power.
std::pair<int, int> prime_power_decomposition(std::uint64_t q);

// Multiplicative order of q modulo an odd prime ell coprime to q.
int e_ell(int ell, int q);

// Integers d <= bound with ell | Phi_d(q): the values e * ell^k.
std::vector<int> E_ell(int ell, int q, int bound);

BigInt ell_part(const BigInt& n, int ell);
int ell_valuation(const BigInt& n, int ell);

int phi_valuation(const CycloFactorization& f, int e);
int phi_valuation(const IntPolynomial& p, int e);

// Order of a Sylow ell-subgroup of GL_n(q) from the generic description.
BigInt predicted_sylow_order(int n, int q, int ell);

// Context tying together ell, q and the derived data e and E.
struct PrimeContext {
    int ell = 0;
    int q = 0;
    int e = 0;
    std::vector<int> E;
    static PrimeContext make(int ell, int q, int bound);
};

}  // namespace brownlevi
