#pragma once

#include "brownlevi/homology.hpp"

#include <string>
#include <vector>

namespace brownlevi {

// Witness that a subposet X with a distinguished x0 contracts through
// x <= x v x0 >= x0: every x has a least upper bound with x0 inside X.
struct ContractibilityCertificate {
    bool pass = false;
    int x0 = -1;
    std::vector<int> lub;          // aligned with vertices; -1 when missing
    int failing_vertex = -1;
    HomologyProfile homology;
    long long reduced_chi = 0;
    std::size_t fixed_sets_checked = 0;
    bool fixed_sets_acyclic = true;
    std::string detail;
};

// `stabilizer` is a subgroup normalizing X and fixing x0; every fixed
// subcomplex under its cyclic subgroups (and itself) is checked as well.
ContractibilityCertificate join_contractibility_certificate(const PosetPtr& poset, const std::vector<int>& vertices,
                                                            int x0, const Subgroup& stabilizer, const Limits& limits);

}  // namespace brownlevi
