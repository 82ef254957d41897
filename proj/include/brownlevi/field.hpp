#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace brownlevi {

// Finite field F_q with q = p^k <= 256. Elements are encoded as integers in
// [0, q) through their base-p coefficient vectors modulo a primitive polynomial.
class FiniteField {
public:
    explicit FiniteField(int q);
    static std::shared_ptr<const FiniteField> make(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int k() const { return k_; }
    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
    std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
    std::uint8_t inv(std::uint8_t a) const;
    std::uint8_t pow(std::uint8_t a, std::uint64_t e) const;
    std::uint8_t frobenius(std::uint8_t a) const { return pow(a, static_cast<std::uint64_t>(p_)); }
    std::uint8_t primitive() const { return primitive_; }
    // Monic primitive polynomial, low degree first, coefficients in F_p.
    const std::vector<int>& modulus() const { return modulus_; }

private:
    int q_, p_, k_;
    std::uint8_t primitive_ = 1;
    std::vector<int> modulus_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

// Big field F_{q^D} over a fixed base F_q, holding all subfields F_{q^d}, d | D,
// as subsets. Elements are base-q digit vectors modulo a primitive polynomial over
// F_q, so F_q sits inside as the constants and every inclusion is literal.
class FieldTower {
public:
    FieldTower(std::shared_ptr<const FiniteField> base, int degree);

    const FiniteField& base() const { return *base_; }
    int degree() const { return degree_; }
    std::uint32_t size() const { return size_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t generator() const { return exp_[1 % (size_ - 1)]; }
    std::uint32_t from_base(std::uint8_t c) const { return c; }

    // Generator of F_{q^d}^x inside the tower, d | D.
    std::uint32_t subfield_generator(int d) const;
    bool in_subfield(std::uint32_t x, int d) const;
    // Coordinates of a subfield element: 0 for zero, 1 + log_{g_d}(x) otherwise.
    std::uint32_t to_local(int d, std::uint32_t x) const;
    std::uint32_t from_local(int d, std::uint32_t j) const;
    // Embedding F_{q^d} -> F_{q^d2} in local coordinates, d | d2 | D.
    std::uint32_t embed(int d, int d2, std::uint32_t j) const;
    // Minimal polynomial over F_q, monic, low degree first.
    std::vector<std::uint8_t> min_poly(std::uint32_t x) const;

private:
    std::uint64_t sub_size(int d) const;
    std::shared_ptr<const FiniteField> base_;
    int degree_;
    std::uint32_t size_;
    std::vector<std::uint32_t> exp_, log_;
};

}  // namespace brownlevi
