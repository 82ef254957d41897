#pragma once

#include "brownlevi/error.hpp"
#include "brownlevi/field.hpp"
#include "brownlevi/linalg.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace brownlevi {

using Elem = std::uint32_t;

// Open-addressing set of element indices.
class ElemSet {
public:
    explicit ElemSet(std::size_t expected = 16);
    bool insert(Elem x);
    bool contains(Elem x) const;
    std::size_t size() const { return count_; }

private:
    void grow();
    std::vector<Elem> slots_;
    std::size_t count_ = 0;
};

// A finite group of invertible matrices over F_q, fully enumerated. Elements are
// indexed in lexicographic order of their entries, so indices do not depend on
// the generating set used to build the group.
class MatrixGroup {
public:
    static std::shared_ptr<const MatrixGroup> generate(std::shared_ptr<const FiniteField> F, int n,
                                                       const std::vector<FqMatrix>& gens, std::string name,
                                                       std::uint64_t max_order);

    const std::string& name() const { return name_; }
    int degree() const { return n_; }
    const FiniteField& field() const { return *field_; }
    std::shared_ptr<const FiniteField> field_ptr() const { return field_; }
    std::uint64_t order() const { return count_; }
    Elem identity() const { return identity_; }
    const std::vector<Elem>& generators() const { return gens_; }

    const std::uint8_t* data(Elem x) const { return entries_.data() + static_cast<std::size_t>(x) * nn_; }
    FqMatrix matrix(Elem x) const;
    std::optional<Elem> find(const FqMatrix& m) const;
    std::optional<Elem> find(const std::uint8_t* bytes) const;

    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const { return inverse_[a]; }
    // g^{-1} x g
    Elem conj(Elem x, Elem g) const { return mul(mul(inverse_[g], x), g); }
    Elem pow(Elem x, std::uint64_t e) const;
    Elem commutator(Elem a, Elem b) const { return mul(mul(inverse_[a], inverse_[b]), mul(a, b)); }
    std::uint64_t element_order(Elem x) const;

private:
    MatrixGroup() = default;
    std::uint64_t hash_bytes(const std::uint8_t* b) const;
    void build_index();
    std::string name_;
    std::shared_ptr<const FiniteField> field_;
    int n_ = 0;
    std::size_t nn_ = 0;
    std::uint64_t count_ = 0;
    Elem identity_ = 0;
    std::vector<Elem> gens_;
    std::vector<std::uint8_t> entries_;
    std::vector<Elem> inverse_;
    std::vector<Elem> table_;
    std::uint64_t mask_ = 0;
};

using GroupPtr = std::shared_ptr<const MatrixGroup>;

// Subgroup of an enumerated group, stored as a sorted set of element indices.
class Subgroup {
public:
    Subgroup() = default;
    Subgroup(GroupPtr G, std::vector<Elem> sorted_elements, std::vector<Elem> gens = {});

    bool valid() const { return static_cast<bool>(d_); }
    const MatrixGroup& ambient() const { return *d_->G; }
    const GroupPtr& ambient_ptr() const { return d_->G; }
    const std::vector<Elem>& elements() const { return d_->elems; }
    std::uint64_t order() const { return d_->elems.size(); }
    std::uint64_t fingerprint() const { return d_->fingerprint; }
    bool contains(Elem x) const;
    // Position of x in elements(), or -1.
    long index_of(Elem x) const;
    const std::vector<Elem>& generators() const;
    bool is_abelian() const;
    bool is_trivial() const { return order() == 1; }
    bool is_subgroup_of(const Subgroup& o) const;
    bool same_as(const Subgroup& o) const;
    // Canonical total order: by order, then lexicographically by elements.
    bool operator<(const Subgroup& o) const;
    bool operator==(const Subgroup& o) const { return same_as(o); }
    bool operator!=(const Subgroup& o) const { return !same_as(o); }
    std::string describe() const;

private:
    struct Data {
        GroupPtr G;
        std::vector<Elem> elems;
        std::uint64_t fingerprint = 0;
        mutable std::once_flag gens_once;
        mutable std::vector<Elem> gens;
        mutable std::once_flag abelian_once;
        mutable bool abelian = false;
    };
    std::shared_ptr<Data> d_;
};

std::uint64_t fingerprint_of(const std::vector<Elem>& sorted);

Subgroup whole_group(const GroupPtr& G);
Subgroup trivial_subgroup(const GroupPtr& G);
Subgroup subgroup_closure(const GroupPtr& G, const std::vector<Elem>& gens);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup join_element(const Subgroup& a, Elem x);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
// Elements of H satisfying pred, which must cut out a subgroup.
Subgroup filter_subgroup(const Subgroup& H, const std::function<bool(Elem)>& pred);
// {g^{-1} s g : s in S}
Subgroup conjugate(const Subgroup& S, Elem g);
bool normalizes(Elem g, const Subgroup& S);
// Whether H lies in the normalizer of S.
bool normalizes_all(const Subgroup& H, const Subgroup& S);
Subgroup centralizer_in(const Subgroup& H, const Subgroup& S);
Subgroup normalizer_in(const Subgroup& H, const Subgroup& S);
Subgroup commutator_subgroup(const Subgroup& S);
// AB for subgroups with AB = BA; throws NotCommuting otherwise.
Subgroup product_subgroup(const Subgroup& A, const Subgroup& B);
Subgroup sylow_subgroup(const Subgroup& H, int ell);
Subgroup center(const Subgroup& H);
// Elements of ell-power order in the abelian group A form its ell-part.
Subgroup ell_part_subgroup(const Subgroup& A, int ell);

struct ClassData {
    Subgroup group;
    std::vector<Elem> reps;
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint64_t> orders;
    std::vector<int> inverse_class;
    std::vector<std::uint32_t> class_of;  // indexed by position in group.elements()

    int k() const { return static_cast<int>(reps.size()); }
    int l_ell(int ell) const;
    int class_index(Elem x) const;
};

ClassData conjugacy_classes(const Subgroup& H);

// Builders.
GroupPtr build_gl(int n, int q, std::uint64_t max_order = 2000000);
GroupPtr build_sym(int n, std::uint64_t max_order = 2000000);
GroupPtr build_from_generators(int q, int n, const std::vector<FqMatrix>& gens, const std::string& name,
                               std::uint64_t max_order = 2000000);

}  // namespace brownlevi
