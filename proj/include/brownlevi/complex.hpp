#pragma once

#include "brownlevi/numtheory.hpp"
#include "brownlevi/poset.hpp"

#include <functional>
#include <unordered_map>
#include <vector>

namespace brownlevi {

using Chain = std::vector<int>;

struct ChainHash {
    std::size_t operator()(const Chain& c) const;
};

// How chains relate to a distinguished member: none, forced first term, forced last term.
enum class Anchor { None, Bottom, Top };

// Strict chains in a vertex subset of a subgroup poset. An anchored complex
// consists of the chains that start (Bottom) or end (Top) at the anchor.
struct ChainComplex {
    PosetPtr poset;
    std::vector<int> vertices;
    Anchor anchor = Anchor::None;
    int anchor_id = -1;
    std::vector<Chain> chains;
    std::unordered_map<Chain, int, ChainHash> index;

    std::size_t size() const { return chains.size(); }
    int dim(std::size_t i) const { return static_cast<int>(chains[i].size()) - 1; }
    std::optional<int> find(const Chain& c) const;
    bool contains_vertex(int v) const;
};

ChainComplex order_complex(const PosetPtr& poset, std::vector<int> vertices, Anchor anchor, int anchor_id,
                           const Limits& limits);

struct ChainOrbit {
    int rep = 0;
    std::size_t size = 0;
    int dim = 0;
    Subgroup stabilizer;
};

// Chains grouped into orbits of G together with representative stabilizers.
struct ChainOrbitTable {
    ChainComplex complex;
    std::vector<int> orbit_of;
    std::vector<ChainOrbit> orbits;
};

// The vertex set must be stable under conjugation by G.
ChainOrbitTable chains_of(ChainComplex complex);
// Stabilizer in G of an arbitrary chain.
Subgroup chain_stabilizer(const SubgroupPoset& P, const Chain& c);
Chain conjugate_chain(const SubgroupPoset& P, const Chain& c, Elem g);

// Sum of (-1)^{dim} over the chains of the complex.
long long euler_characteristic(const ChainComplex& c);
long long reduced_euler_characteristic(const ChainComplex& c);

// Vertices normalized by H, with the same anchor.
ChainComplex fixed_subcomplex(const ChainComplex& c, const Subgroup& H, const Limits& limits);

using GroupFunction = std::function<BigInt(const Subgroup&)>;

// Sum over chain orbits of (-1)^{dim} f(stabilizer).
BigInt alternating_sum(const ChainOrbitTable& t, const GroupFunction& f);

struct BrownCongruence {
    long long chi = 0;
    BigInt sylow_order;
    bool pass = false;
};

BrownCongruence brown_congruence_check(const GroupPtr& G, int ell, const Limits& limits);

}  // namespace brownlevi
