#pragma once

#include "brownlevi/group.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace brownlevi {

// A conjugation-stable family of subgroups of G ordered by inclusion. Members are
// sorted canonically, so inclusion-increasing chains have increasing ids.
class SubgroupPoset {
public:
    SubgroupPoset(GroupPtr G, std::vector<Subgroup> members);

    const GroupPtr& group() const { return G_; }
    int size() const { return static_cast<int>(members_.size()); }
    const Subgroup& member(int i) const { return members_[static_cast<std::size_t>(i)]; }
    const std::vector<Subgroup>& members() const { return members_; }
    std::optional<int> find(const Subgroup& S) const;
    int require(const Subgroup& S) const;

    bool leq(int i, int j) const;
    bool less(int i, int j) const { return i != j && leq(i, j); }
    // Members strictly above i, in increasing id order.
    const std::vector<int>& above(int i) const { return above_[static_cast<std::size_t>(i)]; }

    // Conjugation action of the generators of G on member ids.
    int act(int i, std::size_t gen) const { return action_[gen][static_cast<std::size_t>(i)]; }
    std::size_t generator_count() const { return action_.size(); }
    int orbit_of(int i) const { return orbit_[static_cast<std::size_t>(i)]; }
    int orbit_count() const { return static_cast<int>(orbit_reps_.size()); }
    const std::vector<int>& orbit_reps() const { return orbit_reps_; }
    // Element t with member(orbit rep)^t = member(i).
    Elem transversal(int i) const { return transversal_[static_cast<std::size_t>(i)]; }
    Subgroup normalizer(int i) const;
    bool normalized_by(int i, Elem g) const { return normalizes(g, member(i)); }
    // Image of member i under conjugation by an arbitrary element.
    int conjugate_id(int i, Elem g) const;

private:
    GroupPtr G_;
    std::vector<Subgroup> members_;
    std::unordered_map<std::uint64_t, std::vector<int>> lookup_;
    std::vector<std::vector<int>> above_;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<int>> action_;
    std::vector<int> orbit_, orbit_reps_;
    std::vector<Elem> transversal_;
    mutable std::vector<Subgroup> normalizer_cache_;
    mutable std::vector<Subgroup> rep_normalizer_;
    mutable std::mutex mu_;
};

using PosetPtr = std::shared_ptr<const SubgroupPoset>;

enum class LPosetKind { S, SStar, Ab, AbStar, AbZ };

const char* lposet_kind_name(LPosetKind k);

// The ell-subgroups of G containing a normal ell-subgroup Z, with the usual
// starred and abelian variants expressed as vertex subsets.
struct LPoset {
    LPosetKind kind = LPosetKind::S;
    int ell = 0;
    Subgroup Z;
    PosetPtr all;              // every ell-subgroup containing Z
    std::vector<int> vertices;  // ids in `all` belonging to this kind
    int anchor() const;         // id of Z in `all`
};

// All ell-subgroups of G containing Z (Z defaults to the trivial subgroup).
PosetPtr enumerate_ell_subgroups(const GroupPtr& G, int ell, const Subgroup& Z, const Limits& limits);
LPoset make_lposet(const PosetPtr& all, int ell, const Subgroup& Z, LPosetKind kind);
std::vector<int> ab_filter(const SubgroupPoset& P, const std::vector<int>& vertices, const Subgroup& Z, LPosetKind kind);

}  // namespace brownlevi
