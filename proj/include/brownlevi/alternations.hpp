#pragma once

#include "brownlevi/automorphism.hpp"
#include "brownlevi/complex.hpp"
#include "brownlevi/reductive.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace brownlevi {

// gamma and omega on the members of a subgroup poset of abelian ell-subgroups.
class ClosureOracle {
public:
    explicit ClosureOracle(PosetPtr poset) : poset_(std::move(poset)) {}
    virtual ~ClosureOracle() = default;

    const SubgroupPoset& poset() const { return *poset_; }
    const PosetPtr& poset_ptr() const { return poset_; }
    virtual int gamma(int id) const = 0;
    virtual int omega(int id) const = 0;
    // Whether the ell-prime conditions behind the closure alternation hold.
    virtual bool hypotheses_ok() const { return true; }

    bool e_closed(int id) const { return gamma(id) == id; }
    bool weakly_e_closed(int id) const { return omega(id) == id; }
    // omega^{t_A}(A), memoized.
    int weak_closure(int id) const;
    // gamma^{r_A}(A) for weakly e-closed A, memoized.
    int closure(int id) const;

private:
    PosetPtr poset_;
    mutable std::mutex mu_;
    mutable std::vector<int> weak_, closed_;
};

// Oracle backed by the GL closure engine.
class EngineOracle : public ClosureOracle {
public:
    EngineOracle(PosetPtr poset, std::shared_ptr<const ClosureEngine> engine);
    int gamma(int id) const override;
    int omega(int id) const override;
    bool hypotheses_ok() const override { return ok_; }
    const ClosureEngine& engine() const { return *engine_; }

private:
    std::shared_ptr<const ClosureEngine> engine_;
    bool ok_ = false;
};

// Oracle given by an explicit gamma table; omega(A) = A gamma(A).
class TableOracle : public ClosureOracle {
public:
    TableOracle(PosetPtr poset, std::vector<int> gamma_table);
    int gamma(int id) const override { return gamma_.at(static_cast<std::size_t>(id)); }
    int omega(int id) const override { return omega_.at(static_cast<std::size_t>(id)); }

private:
    std::vector<int> gamma_, omega_;
};

// Chains are increasing lists of poset ids whose first term is the anchor Z.
Chain phi_abelian(const SubgroupPoset& P, const Chain& sigma);
Chain phi_weak(const ClosureOracle& O, const Chain& sigma);
Chain phi_eclosed(const ClosureOracle& O, const Chain& sigma);
Chain phi_composite(const ClosureOracle& O, const Chain& sigma);

enum class AlternationKind { Abelian, Weak, EClosed, Composite };

const char* alternation_name(AlternationKind k);

struct AlternationMap {
    std::string label;
    std::function<Chain(const Chain&)> apply;
};

// `oracle` may be null for the abelian alternation.
AlternationMap make_alternation(AlternationKind kind, const PosetPtr& poset, std::shared_ptr<const ClosureOracle> oracle);

// Delta and the subcomplex Delta' of the alternation as chain predicates.
struct AlternationDomain {
    std::function<bool(const Chain&)> in_delta;
    std::function<bool(const Chain&)> in_prime;
};

AlternationDomain alternation_domain(AlternationKind kind, const PosetPtr& poset,
                                     std::shared_ptr<const ClosureOracle> oracle);

struct AlternationReport {
    std::string label;
    bool pass = true;
    std::size_t domain_size = 0;
    std::size_t automorphisms = 0;
    long long sign_sum = 0;
    std::size_t up = 0, down = 0;  // dimension increases and decreases
    std::string failure;
    Chain counterexample;
};

// Permutation of poset ids induced by an automorphism.
std::vector<int> automorphism_action(const SubgroupPoset& P, const Automorphism& a);

// Checks the alternation axioms on every chain of `delta` outside Delta'.
AlternationReport verify_alternation(const AlternationMap& phi, const std::vector<Chain>& delta,
                                     const std::function<bool(const Chain&)>& in_prime, const SubgroupPoset& P,
                                     const std::vector<Automorphism>& autos);

// Chains of an anchored complex lying in the domain.
std::vector<Chain> domain_chains(const ChainComplex& c, const AlternationDomain& d);

// Alternating orbit sum per complex.
std::vector<BigInt> cancellation_sums(const GroupFunction& f, const std::vector<const ChainOrbitTable*>& complexes);

// Sum of (-1)^{dim} f(G_sigma) over chain orbits of `t` that satisfy `pred`.
BigInt orbit_sum_where(const ChainOrbitTable& t, const GroupFunction& f, const std::function<bool(const Chain&)>& pred);

}  // namespace brownlevi
