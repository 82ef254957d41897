#include "brownlevi/field.hpp"

#include "brownlevi/error.hpp"
#include "brownlevi/numtheory.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace brownlevi {
namespace {

struct BaseOps {
    int size;
    std::function<int(int, int)> add;
    std::function<int(int, int)> mul;
    std::function<int(int)> neg;
};

using Residue = std::vector<int>;

// Multiply residues modulo the monic polynomial f (length D + 1).
Residue mul_mod(const BaseOps& B, const Residue& a, const Residue& b, const std::vector<int>& f) {
    const int D = static_cast<int>(f.size()) - 1;
    std::vector<int> prod(static_cast<std::size_t>(2 * D), 0);
    for (int i = 0; i < D; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < D; ++j) prod[i + j] = B.add(prod[i + j], B.mul(a[i], b[j]));
    }
    for (int i = 2 * D - 1; i >= D; --i) {
        const int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < D; ++j) prod[i - D + j] = B.add(prod[i - D + j], B.neg(B.mul(c, f[j])));
    }
    prod.resize(static_cast<std::size_t>(D));
    return prod;
}

Residue x_residue(const BaseOps& B, const std::vector<int>& f) {
    const int D = static_cast<int>(f.size()) - 1;
    Residue x(static_cast<std::size_t>(D), 0);
    if (D == 1) {
        x[0] = B.neg(f[0]);
    } else {
        x[1] = 1;
    }
    return x;
}

Residue pow_mod_poly(const BaseOps& B, Residue a, std::uint64_t e, const std::vector<int>& f) {
    const int D = static_cast<int>(f.size()) - 1;
    Residue r(static_cast<std::size_t>(D), 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = mul_mod(B, r, a, f);
        a = mul_mod(B, a, a, f);
        e >>= 1;
    }
    return r;
}

bool is_one(const Residue& r) {
    if (r[0] != 1) return false;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return false;
    return true;
}

// Lexicographically first monic polynomial of the given degree with x primitive.
std::vector<int> find_primitive_poly(const BaseOps& B, int D) {
    std::uint64_t N = 1;
    for (int i = 0; i < D; ++i) N *= static_cast<std::uint64_t>(B.size);
    N -= 1;
    const auto primes = prime_factors(N);
    std::uint64_t candidates = 1;
    for (int i = 0; i < D; ++i) candidates *= static_cast<std::uint64_t>(B.size);
    for (std::uint64_t c = 0; c < candidates; ++c) {
        std::vector<int> f(static_cast<std::size_t>(D) + 1, 0);
        std::uint64_t t = c;
        for (int i = 0; i < D; ++i) {
            f[i] = static_cast<int>(t % static_cast<std::uint64_t>(B.size));
            t /= static_cast<std::uint64_t>(B.size);
        }
        f[D] = 1;
        if (f[0] == 0) continue;
        const Residue x = x_residue(B, f);
        if (!is_one(pow_mod_poly(B, x, N, f))) continue;
        bool primitive = true;
        for (auto r : primes) {
            if (is_one(pow_mod_poly(B, x, N / r, f))) {
                primitive = false;
                break;
            }
        }
        if (primitive) return f;
    }
    throw Error(ErrorKind::InvalidArgument, "no primitive polynomial found");
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
    auto [p, k] = prime_power_decomposition(static_cast<std::uint64_t>(q));
    if (p == 0 || q > 256) throw Error(ErrorKind::InvalidArgument, "field order must be a prime power at most 256");
    p_ = p;
    k_ = k;
    BaseOps B{p, [p](int a, int b) { return (a + b) % p; }, [p](int a, int b) { return (a * b) % p; },
              [p](int a) { return (p - a) % p; }};
    modulus_ = find_primitive_poly(B, k);
    auto encode = [&](const Residue& r) {
        int v = 0;
        for (int i = k - 1; i >= 0; --i) v = v * p + r[i];
        return v;
    };
    auto decode = [&](int v) {
        Residue r(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) {
            r[i] = v % p;
            v /= p;
        }
        return r;
    };
    const std::size_t qq = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
    add_.assign(qq, 0);
    mul_.assign(qq, 0);
    neg_.assign(static_cast<std::size_t>(q), 0);
    inv_.assign(static_cast<std::size_t>(q), 0);
    for (int a = 0; a < q; ++a) {
        const Residue ra = decode(a);
        Residue rn(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rn[i] = (p - ra[i]) % p;
        neg_[a] = static_cast<std::uint8_t>(encode(rn));
        for (int b = 0; b < q; ++b) {
            const Residue rb = decode(b);
            Residue rs(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) rs[i] = (ra[i] + rb[i]) % p;
            add_[a * q + b] = static_cast<std::uint8_t>(encode(rs));
        }
    }
    std::vector<int> expv(static_cast<std::size_t>(q - 1)), logv(static_cast<std::size_t>(q), -1);
    const Residue x = x_residue(B, modulus_);
    Residue cur(static_cast<std::size_t>(k), 0);
    cur[0] = 1;
    for (int i = 0; i < q - 1; ++i) {
        const int v = encode(cur);
        expv[i] = v;
        logv[v] = i;
        cur = mul_mod(B, cur, x, modulus_);
    }
    primitive_ = static_cast<std::uint8_t>(expv[1 % (q - 1)]);
    for (int a = 1; a < q; ++a) {
        for (int b = 1; b < q; ++b) mul_[a * q + b] = static_cast<std::uint8_t>(expv[(logv[a] + logv[b]) % (q - 1)]);
        inv_[a] = static_cast<std::uint8_t>(expv[(q - 1 - logv[a]) % (q - 1)]);
    }
}

std::shared_ptr<const FiniteField> FiniteField::make(int q) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const FiniteField>(q);
    cache.emplace(q, f);
    return f;
}

std::uint8_t FiniteField::inv(std::uint8_t a) const {
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
    return inv_[a];
}

std::uint8_t FiniteField::pow(std::uint8_t a, std::uint64_t e) const {
    std::uint8_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FieldTower::FieldTower(std::shared_ptr<const FiniteField> base, int degree) : base_(std::move(base)), degree_(degree) {
    if (degree < 1) throw Error(ErrorKind::InvalidArgument, "tower degree must be positive");
    std::uint64_t sz = 1;
    for (int i = 0; i < degree; ++i) sz *= static_cast<std::uint64_t>(base_->q());
    if (sz > (1u << 24)) throw Error(ErrorKind::TooLarge, "field tower too large");
    size_ = static_cast<std::uint32_t>(sz);
    const FiniteField* F = base_.get();
    BaseOps B{F->q(), [F](int a, int b) { return F->add(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)); },
              [F](int a, int b) { return F->mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)); },
              [F](int a) { return F->neg(static_cast<std::uint8_t>(a)); }};
    const auto f = find_primitive_poly(B, degree);
    const int q = F->q();
    auto encode = [&](const Residue& r) {
        std::uint32_t v = 0;
        for (int i = degree - 1; i >= 0; --i) v = v * static_cast<std::uint32_t>(q) + static_cast<std::uint32_t>(r[i]);
        return v;
    };
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, 0);
    const Residue x = x_residue(B, f);
    Residue cur(static_cast<std::size_t>(degree), 0);
    cur[0] = 1;
    for (std::uint32_t i = 0; i + 1 < size_; ++i) {
        const std::uint32_t v = encode(cur);
        exp_[i] = v;
        log_[v] = i;
        cur = mul_mod(B, cur, x, f);
    }
}

std::uint32_t FieldTower::add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t q = static_cast<std::uint32_t>(base_->q());
    std::uint32_t r = 0, scale = 1;
    for (int i = 0; i < degree_; ++i) {
        const auto da = static_cast<std::uint8_t>(a % q), db = static_cast<std::uint8_t>(b % q);
        r += scale * base_->add(da, db);
        a /= q;
        b /= q;
        scale *= q;
    }
    return r;
}

std::uint32_t FieldTower::neg(std::uint32_t a) const {
    const std::uint32_t q = static_cast<std::uint32_t>(base_->q());
    std::uint32_t r = 0, scale = 1;
    for (int i = 0; i < degree_; ++i) {
        r += scale * base_->neg(static_cast<std::uint8_t>(a % q));
        a /= q;
        scale *= q;
    }
    return r;
}

std::uint32_t FieldTower::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (size_ - 1)];
}

std::uint32_t FieldTower::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1)) % (size_ - 1)];
}

std::uint64_t FieldTower::sub_size(int d) const {
    if (d < 1 || degree_ % d != 0) throw Error(ErrorKind::InvalidArgument, "subfield degree must divide tower degree");
    std::uint64_t s = 1;
    for (int i = 0; i < d; ++i) s *= static_cast<std::uint64_t>(base_->q());
    return s;
}

std::uint32_t FieldTower::subfield_generator(int d) const {
    const std::uint64_t s = sub_size(d);
    return exp_[((size_ - 1) / (s - 1)) % (size_ - 1)];
}

bool FieldTower::in_subfield(std::uint32_t x, int d) const { return pow(x, sub_size(d)) == x; }

std::uint32_t FieldTower::to_local(int d, std::uint32_t x) const {
    if (!in_subfield(x, d)) throw Error(ErrorKind::InvalidArgument, "element outside subfield");
    if (x == 0) return 0;
    const std::uint64_t s = sub_size(d);
    const std::uint64_t step = (size_ - 1) / (s - 1);
    return static_cast<std::uint32_t>(log_[x] / step + 1);
}

std::uint32_t FieldTower::from_local(int d, std::uint32_t j) const {
    const std::uint64_t s = sub_size(d);
    if (j >= s) throw Error(ErrorKind::InvalidArgument, "local coordinate out of range");
    if (j == 0) return 0;
    const std::uint64_t step = (size_ - 1) / (s - 1);
    return exp_[(static_cast<std::uint64_t>(j - 1) * step) % (size_ - 1)];
}

std::uint32_t FieldTower::embed(int d, int d2, std::uint32_t j) const {
    if (d2 % d != 0) throw Error(ErrorKind::InvalidArgument, "embedding requires d | d2");
    return to_local(d2, from_local(d, j));
}

std::vector<std::uint8_t> FieldTower::min_poly(std::uint32_t x) const {
    const auto q = static_cast<std::uint64_t>(base_->q());
    std::vector<std::uint32_t> conj{x};
    for (std::uint32_t y = pow(x, q); y != x; y = pow(y, q)) conj.push_back(y);
    std::vector<std::uint32_t> poly{1};
    for (auto c : conj) {
        std::vector<std::uint32_t> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = add(next[i + 1], poly[i]);
            next[i] = add(next[i], neg(mul(c, poly[i])));
        }
        poly = std::move(next);
    }
    std::vector<std::uint8_t> out;
    for (auto c : poly) {
        if (c >= q) throw Error(ErrorKind::InvalidArgument, "minimal polynomial not over base field");
        out.push_back(static_cast<std::uint8_t>(c));
    }
    return out;
}

}  // namespace brownlevi
