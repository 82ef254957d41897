#pragma once

#include "brownlevi/complex.hpp"
#include "brownlevi/field.hpp"
#include "brownlevi/group.hpp"
#include "brownlevi/numtheory.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace brownlevi {

struct GLContext {
    int n = 0;
    int q = 0;
    int p = 0;
    GroupPtr G;
    std::shared_ptr<const FiniteField> F;
    std::shared_ptr<const FieldTower> tower;  // covers F_{q^d} for every d <= n

    static std::shared_ptr<const GLContext> make(int n, int q, const Limits& limits);
    // Context over an already enumerated GL_n(q).
    static std::shared_ptr<const GLContext> wrap(const GroupPtr& G);
    Elem element(const FqMatrix& m) const;
};

using ContextPtr = std::shared_ptr<const GLContext>;

// A subspace on which a commutative algebra acts through a field F_{q^d}.
struct IsotypicBlock {
    int d = 1;            // field degree of the declared action
    int m = 1;            // dimension over F_{q^d}
    FqMatrix basis;       // n x (d m)
    FqMatrix field_gen;   // (d m) x (d m), multiplicative order q^d - 1
};

// Block data of a Levi subgroup: field blocks plus a complementary F_q-block V0
// on which the subgroup acts as the full general linear group.
struct LeviDatum {
    ContextPtr ctx;
    std::vector<IsotypicBlock> blocks;
    FqMatrix v0;  // n x n0, possibly with zero columns

    int n0() const { return v0.cols; }
    FqMatrix frame() const;
    // Action of block j's field generator, identity on the other blocks and V0.
    FqMatrix scalar_action(std::size_t j) const;
    // Scalar action of F_q^x on V0, identity elsewhere.
    FqMatrix v0_scalar_action() const;
    IntPolynomial order_polynomial() const;
    BigInt predicted_order() const;
    bool contains(Elem g) const;
    // Generated from block generators of each GL_m(q^d) factor; order is checked.
    Subgroup subgroup() const;
    // Z(L)^F: generated by the block scalars and the V0 scalars.
    Subgroup center_subgroup() const;
    LeviDatum conjugate(Elem g) const;
    // Determines the associated subgroup.
    std::string key() const;
    // Block degrees and multiplicities, e.g. "n0=2;2^1".
    std::string type_string() const;
    void canonicalize();
};

struct TorusPart {
    LeviDatum source;
    int e = 1;
    std::vector<std::size_t> flagged;       // indices into source.blocks
    bool v0_flagged = false;                // V0 counts as a degree-1 block
    std::vector<BigInt> fixed_point_orders; // per flagged block, Phi_e(q)
};

// C_G(A) for an abelian ell-subgroup via isotypic decomposition.
LeviDatum connected_centralizer(const ContextPtr& ctx, const Subgroup& A);
IntPolynomial levi_order_polynomial(const LeviDatum& L);
TorusPart phi_e_center_part(const LeviDatum& L, int e);
LeviDatum e_split_centralizer(const TorusPart& T);
Subgroup z_ell_part(const LeviDatum& L, int ell);

struct EClosureReport {
    Subgroup input;
    Subgroup gamma;
    Subgroup omega;
    int t = 0;
    int r = 0;
    Subgroup weak_closure;   // omega^t(A)
    Subgroup closure;        // gamma^r(omega^t(A))
    bool e_closed = false;
    bool weakly_e_closed = false;
};

// Memoized closure operators for fixed (ell, e).
class ClosureEngine {
public:
    ClosureEngine(ContextPtr ctx, int ell, int e);
    const ContextPtr& context() const { return ctx_; }
    int ell() const { return ell_; }
    int e() const { return e_; }

    Subgroup gamma(const Subgroup& A) const;
    Subgroup omega(const Subgroup& A) const;
    EClosureReport stabilize(const Subgroup& A) const;
    bool is_e_closed(const Subgroup& A) const { return gamma(A) == A; }
    bool is_weakly_e_closed(const Subgroup& A) const { return omega(A) == A; }
    // e_split_centralizer(phi_e_center_part(connected_centralizer(A))).
    LeviDatum split_levi(const Subgroup& A) const;

private:
    ContextPtr ctx_;
    int ell_, e_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, std::vector<std::pair<Subgroup, Subgroup>>> gamma_cache_;
    mutable std::unordered_map<std::uint64_t, std::vector<std::pair<Subgroup, LeviDatum>>> levi_cache_;
};

Subgroup gamma(const ContextPtr& ctx, const Subgroup& A, int ell, int e);
Subgroup omega(const ContextPtr& ctx, const Subgroup& A, int ell, int e);

struct LeviEntry {
    LeviDatum datum;
    Subgroup subgroup;
    std::string type;
    bool proper = true;
};

struct LeviEnumeration {
    int e = 1;
    std::vector<LeviEntry> levis;       // sorted canonically by subgroup, G last
    std::vector<std::size_t> reps;      // one index per conjugacy class
    std::map<std::string, std::size_t> count_by_type;
    PosetPtr poset;                     // subgroups of all e-split Levis
    std::unordered_map<std::string, int> by_key;  // datum key -> poset id

    int find(const LeviDatum& L) const;  // poset id or -1
    int whole_id() const;
};

LeviEnumeration enumerate_e_split_levis(const ContextPtr& ctx, int e, const Limits& limits);

// Levi chain ending at G -> chain of e-closed subgroups starting at Z(G)_ell.
std::vector<Subgroup> iota(const std::vector<LeviDatum>& chain, int ell);
// Inverse direction; throws NotEClosed on a non-closed term.
std::vector<LeviDatum> delta(const ClosureEngine& eng, const std::vector<Subgroup>& chain);

struct HypothesisItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<HypothesisItem> hypothesis_check(int n, int q, int ell);
std::vector<HypothesisItem> hypothesis_check(const GLContext& ctx, int ell);
bool hypotheses_hold(const std::vector<HypothesisItem>& items);

}  // namespace brownlevi
