#pragma once

#include "brownlevi/group.hpp"

#include <string>
#include <vector>

namespace brownlevi {

struct Automorphism {
    enum class Kind { Inner, FieldPower, TransposeInverse };
    Kind kind = Kind::Inner;
    Elem g = 0;     // Inner: x -> g^{-1} x g
    int power = 1;  // FieldPower: entrywise x -> x^{p^power}
    std::string describe() const;
};

Elem apply_automorphism(const MatrixGroup& G, const Automorphism& a, Elem x);
Subgroup apply_automorphism(const Automorphism& a, const Subgroup& S);
// Whether the map sends the generators of G into G.
bool preserves(const MatrixGroup& G, const Automorphism& a);
// Inner automorphisms by the generators of G, the Frobenius map and the
// transpose-inverse map whenever these preserve G.
std::vector<Automorphism> standard_automorphisms(const GroupPtr& G);

}  // namespace brownlevi
