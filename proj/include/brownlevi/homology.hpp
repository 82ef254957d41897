#pragma once

#include "brownlevi/complex.hpp"

#include <vector>

namespace brownlevi {

// Integral homology of the simplicial complex spanned by a chain complex's
// vertex set (an anchor is treated as an ordinary vertex, giving a cone).
struct HomologyProfile {
    std::vector<long long> betti;               // unreduced, index = degree
    std::vector<std::vector<BigInt>> torsion;   // nontrivial elementary divisors per degree
    bool torsion_computed = true;
    bool empty = true;

    long long reduced_betti(std::size_t k) const;
    std::vector<long long> reduced() const;
    long long euler() const;
    bool acyclic() const;  // vanishing reduced homology
};

HomologyProfile homology(const ChainComplex& c, const Limits& limits);

// Elementary divisors of an integer matrix given densely; exposed for tests.
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m);

}  // namespace brownlevi
