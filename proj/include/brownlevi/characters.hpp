#pragma once

#include "brownlevi/group.hpp"
#include "brownlevi/numtheory.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace brownlevi {

// Irreducible characters of a finite group, values reduced modulo a prime r
// with r = 1 mod exp(G) and r > 2 sqrt|G|. Degrees are lifted to integers.
struct CharTableData {
    std::uint64_t order = 0;
    std::uint64_t prime = 0;
    std::uint64_t exponent = 0;
    std::vector<std::uint64_t> class_sizes;
    std::vector<int> inverse_class;
    int identity_class = 0;
    std::vector<std::uint64_t> degrees;               // one per irreducible
    std::vector<std::vector<std::uint64_t>> values;   // values[chi][class] mod prime
    bool orthogonality_ok = false;

    int k() const { return static_cast<int>(class_sizes.size()); }
};

// Burnside-Dixon over F_r. Throws TooLargeForCharacters beyond the limits.
CharTableData character_degrees(const Subgroup& H, const Limits& limits);
// Characters of N/Q for Q normal in N, computed on the coset group.
CharTableData quotient_character_degrees(const Subgroup& N, const Subgroup& Q, const Limits& limits);

struct DefectProfile {
    int ell = 0;
    int valuation = 0;                 // v_ell(|G|)
    std::map<int, std::size_t> counts; // defect -> number of irreducibles

    std::size_t k0() const { return kd(0); }
    std::size_t kd(int d) const;
    std::size_t total() const;
};

DefectProfile defect_profile(const CharTableData& t, int ell);
DefectProfile defect_profile(const Subgroup& H, int ell, const Limits& limits);
std::size_t k0(const Subgroup& H, int ell, const Limits& limits);
std::size_t kd(const Subgroup& H, int ell, int d, const Limits& limits);

struct WeightTerm {
    Subgroup Q;
    std::uint64_t normalizer_order = 0;
    std::size_t k0 = 0;  // defect-zero characters of N_G(Q)/Q
};

struct WeightCount {
    std::size_t total = 0;
    std::vector<WeightTerm> terms;  // one per conjugacy class of ell-subgroups
};

// Alperin weights: sum over classes of ell-subgroups Q of k0(N_G(Q)/Q).
WeightCount count_weights(const GroupPtr& G, int ell, const Limits& limits);

}  // namespace brownlevi
