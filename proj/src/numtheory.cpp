#include "brownlevi/numtheory.hpp"

#include "brownlevi/error.hpp"

#include <mutex>
#include <sstream>

namespace brownlevi {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

IntPolynomial IntPolynomial::monomial(int degree, const BigInt& c) {
    std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

BigInt IntPolynomial::leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

BigInt IntPolynomial::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] -= o.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return IntPolynomial(std::move(v));
}

bool IntPolynomial::divide_exact(const IntPolynomial& d, IntPolynomial& quotient) const {
    if (d.is_zero() || d.leading() != 1) throw Error(ErrorKind::InvalidArgument, "divisor must be monic");
    if (is_zero()) {
        quotient = {};
        return true;
    }
    if (degree() < d.degree()) return false;
    std::vector<BigInt> rem = coeffs_;
    std::vector<BigInt> q(static_cast<std::size_t>(degree() - d.degree()) + 1, 0);
    const int dd = d.degree();
    for (int i = degree(); i >= dd; --i) {
        const BigInt c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        q[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * d.coeffs_[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < dd; ++i)
        if (rem[static_cast<std::size_t>(i)] != 0) return false;
    quotient = IntPolynomial(std::move(q));
    return true;
}

IntPolynomial IntPolynomial::compose_power(int k) const {
    if (is_zero()) return {};
    std::vector<BigInt> v(static_cast<std::size_t>(degree()) * static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * static_cast<std::size_t>(k)] = coeffs_[i];
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        BigInt c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

IntPolynomial cyclotomic_poly(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
    static std::mutex mu;
    static std::map<int, IntPolynomial> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    IntPolynomial p = IntPolynomial::monomial(n) - IntPolynomial::constant(1);
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        IntPolynomial q;
        if (!p.divide_exact(cyclotomic_poly(d), q)) throw Error(ErrorKind::InvalidArgument, "cyclotomic recursion failed");
        p = q;
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(n, p);
    return p;
}

IntPolynomial order_poly_gl(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "rank must be positive");
    IntPolynomial p = IntPolynomial::monomial(n * (n - 1) / 2);
    for (int i = 1; i <= n; ++i) p = p * (IntPolynomial::monomial(i) - IntPolynomial::constant(1));
    return p;
}

int CycloFactorization::exponent_of(int d) const {
    auto it = exponents.find(d);
    return it == exponents.end() ? 0 : it->second;
}

IntPolynomial CycloFactorization::reconstruct() const {
    IntPolynomial p = IntPolynomial::monomial(x_exponent);
    for (const auto& [d, a] : exponents)
        for (int i = 0; i < a; ++i) p = p * cyclotomic_poly(d);
    return p;
}

CycloFactorization cyclo_factor(const IntPolynomial& p) {
    if (p.is_zero()) throw Error(ErrorKind::NotCyclotomicProduct, "zero polynomial");
    CycloFactorization f;
    f.source = p;
    int low = 0;
    while (p.coeff(low) == 0) ++low;
    f.x_exponent = low;
    std::vector<BigInt> shifted(p.coeffs().begin() + low, p.coeffs().end());
    IntPolynomial rest(std::move(shifted));
    const int bound = rest.degree();
    for (int d = 1; d <= bound && rest.degree() > 0; ++d) {
        IntPolynomial phi = cyclotomic_poly(d);
        if (phi.degree() > rest.degree()) continue;
        IntPolynomial q;
        while (rest.degree() >= phi.degree() && rest.divide_exact(phi, q)) {
            rest = q;
            ++f.exponents[d];
        }
    }
    if (rest != IntPolynomial::constant(1))
        throw Error(ErrorKind::NotCyclotomicProduct, "residual factor " + rest.to_string());
    if (f.reconstruct() != p) throw Error(ErrorKind::NotCyclotomicProduct, "reconstruction mismatch");
    return f;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 r = 1 % mod, b = base % mod;
    while (exp) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::pair<int, int> prime_power_decomposition(std::uint64_t q) {
    if (q < 2) return {0, 0};
    auto ps = prime_factors(q);
    if (ps.size() != 1) return {0, 0};
    int k = 0;
    while (q > 1) {
        q /= ps[0];
        ++k;
    }
    return {static_cast<int>(ps[0]), k};
}

int e_ell(int ell, int q) {
    if (ell == 2) throw Error(ErrorKind::InvalidPrime, "ell = 2 is excluded");
    if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell))) throw Error(ErrorKind::InvalidPrime, "ell must be prime");
    if (q < 2) throw Error(ErrorKind::InvalidArgument, "q must be at least 2");
    if (q % ell == 0) throw Error(ErrorKind::InvalidPrime, "ell divides q");
    int e = 1;
    long long x = q % ell;
    while (x != 1) {
        x = x * (q % ell) % ell;
        ++e;
    }
    return e;
}

std::vector<int> E_ell(int ell, int q, int bound) {
    const int e = e_ell(ell, q);
    std::vector<int> out;
    for (long long v = e; v <= bound; v *= ell) out.push_back(static_cast<int>(v));
    return out;
}

BigInt ell_part(const BigInt& n, int ell) {
    if (ell < 2) throw Error(ErrorKind::InvalidArgument, "ell must be at least 2");
    BigInt m = n < 0 ? BigInt(-n) : n;
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "ell-part of zero");
    BigInt part = 1;
    while (m % ell == 0) {
        m /= ell;
        part *= ell;
    }
    return part;
}

int ell_valuation(const BigInt& n, int ell) {
    BigInt p = ell_part(n, ell);
    int v = 0;
    while (p > 1) {
        p /= ell;
        ++v;
    }
    return v;
}

int phi_valuation(const CycloFactorization& f, int e) { return f.exponent_of(e); }

int phi_valuation(const IntPolynomial& p, int e) { return cyclo_factor(p).exponent_of(e); }

BigInt predicted_sylow_order(int n, int q, int ell) {
    const CycloFactorization f = cyclo_factor(order_poly_gl(n));
    BigInt order = 1;
    for (int d : E_ell(ell, q, n)) {
        const BigInt part = ell_part(cyclotomic_poly(d).evaluate(q), ell);
        for (int i = 0; i < f.exponent_of(d); ++i) order *= part;
    }
    return order;
}

PrimeContext PrimeContext::make(int ell, int q, int bound) {
    PrimeContext c;
    c.ell = ell;
    c.q = q;
    c.e = e_ell(ell, q);
    c.E = E_ell(ell, q, bound);
    return c;
}

}  // namespace brownlevi
