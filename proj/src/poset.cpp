#include "brownlevi/poset.hpp"

#include "brownlevi/numtheory.hpp"

#include <algorithm>

namespace brownlevi {

SubgroupPoset::SubgroupPoset(GroupPtr G, std::vector<Subgroup> members) : G_(std::move(G)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    const std::size_t m = members_.size();
    for (std::size_t i = 0; i < m; ++i) lookup_[members_[i].fingerprint()].push_back(static_cast<int>(i));
    leq_.assign(m, std::vector<char>(m, 0));
    above_.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        leq_[i][i] = 1;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (members_[i].is_subgroup_of(members_[j])) {
                leq_[i][j] = 1;
                above_[i].push_back(static_cast<int>(j));
            }
        }
    }
    const auto& gens = G_->generators();
    action_.assign(gens.size(), std::vector<int>(m, -1));
    for (std::size_t s = 0; s < gens.size(); ++s)
        for (std::size_t i = 0; i < m; ++i) {
            auto id = find(conjugate(members_[i], gens[s]));
            if (!id) throw Error(ErrorKind::InvalidArgument, "subgroup family is not conjugation stable");
            action_[s][i] = *id;
        }
    orbit_.assign(m, -1);
    transversal_.assign(m, G_->identity());
    for (std::size_t i = 0; i < m; ++i) {
        if (orbit_[i] >= 0) continue;
        const int oid = static_cast<int>(orbit_reps_.size());
        orbit_reps_.push_back(static_cast<int>(i));
        orbit_[i] = oid;
        std::vector<int> queue{static_cast<int>(i)};
        for (std::size_t t = 0; t < queue.size(); ++t) {
            const int x = queue[t];
            for (std::size_t s = 0; s < gens.size(); ++s) {
                const int y = action_[s][static_cast<std::size_t>(x)];
                if (orbit_[static_cast<std::size_t>(y)] >= 0) continue;
                orbit_[static_cast<std::size_t>(y)] = oid;
                transversal_[static_cast<std::size_t>(y)] = G_->mul(transversal_[static_cast<std::size_t>(x)], gens[s]);
                queue.push_back(y);
            }
        }
    }
    normalizer_cache_.assign(m, Subgroup());
    rep_normalizer_.assign(orbit_reps_.size(), Subgroup());
}

std::optional<int> SubgroupPoset::find(const Subgroup& S) const {
    auto it = lookup_.find(S.fingerprint());
    if (it == lookup_.end()) return std::nullopt;
    for (int i : it->second)
        if (members_[static_cast<std::size_t>(i)] == S) return i;
    return std::nullopt;
}

int SubgroupPoset::require(const Subgroup& S) const {
    auto id = find(S);
    if (!id) throw Error(ErrorKind::InvalidArgument, "subgroup " + S.describe() + " is not a member of the poset");
    return *id;
}

bool SubgroupPoset::leq(int i, int j) const { return leq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0; }

Subgroup SubgroupPoset::normalizer(int i) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = normalizer_cache_[static_cast<std::size_t>(i)];
    if (slot.valid()) return slot;
    const int oid = orbit_[static_cast<std::size_t>(i)];
    auto& rn = rep_normalizer_[static_cast<std::size_t>(oid)];
    if (!rn.valid()) rn = normalizer_in(whole_group(G_), members_[static_cast<std::size_t>(orbit_reps_[static_cast<std::size_t>(oid)])]);
    slot = conjugate(rn, transversal_[static_cast<std::size_t>(i)]);
    return slot;
}

int SubgroupPoset::conjugate_id(int i, Elem g) const { return require(conjugate(member(i), g)); }

const char* lposet_kind_name(LPosetKind k) {
    switch (k) {
        case LPosetKind::S: return "S";
        case LPosetKind::SStar: return "S*";
        case LPosetKind::Ab: return "Ab";
        case LPosetKind::AbStar: return "Ab*";
        case LPosetKind::AbZ: return "AbZ";
    }
    return "?";
}

int LPoset::anchor() const { return all->require(Z); }

PosetPtr enumerate_ell_subgroups(const GroupPtr& G, int ell, const Subgroup& Z_in, const Limits& limits) {
    const Subgroup W = whole_group(G);
    const Subgroup Z = Z_in.valid() ? Z_in : trivial_subgroup(G);
    const Subgroup P = sylow_subgroup(W, ell);
    if (P.order() > limits.max_sylow_order)
        throw Error(ErrorKind::TooManySubgroups, "Sylow subgroup of order " + std::to_string(P.order()) + " exceeds the bound");
    // Subgroups of P, grown one generator at a time.
    std::vector<Subgroup> local{trivial_subgroup(G)};
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen_local;
    auto known = [](const std::vector<Subgroup>& list, std::unordered_map<std::uint64_t, std::vector<std::size_t>>& idx,
                    const Subgroup& S) {
        auto it = idx.find(S.fingerprint());
        if (it == idx.end()) return false;
        for (auto k : it->second)
            if (list[k] == S) return true;
        return false;
    };
    seen_local[local[0].fingerprint()].push_back(0);
    for (std::size_t i = 0; i < local.size(); ++i) {
        for (Elem x : P.elements()) {
            if (local[i].contains(x)) continue;
            Subgroup K = join_element(local[i], x);
            if (known(local, seen_local, K)) continue;
            seen_local[K.fingerprint()].push_back(local.size());
            local.push_back(K);
            if (local.size() > limits.max_subgroups)
                throw Error(ErrorKind::TooManySubgroups, "more than " + std::to_string(limits.max_subgroups) + " subgroups");
        }
    }
    // Close under conjugation in G; every ell-subgroup is conjugate into P.
    std::vector<Subgroup> all;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    const auto& gens = G->generators();
    for (const auto& H : local) {
        if (known(all, seen, H)) continue;
        const std::size_t start = all.size();
        seen[H.fingerprint()].push_back(all.size());
        all.push_back(H);
        for (std::size_t t = start; t < all.size(); ++t) {
            for (Elem g : gens) {
                Subgroup C = conjugate(all[t], g);
                if (known(all, seen, C)) continue;
                seen[C.fingerprint()].push_back(all.size());
                all.push_back(C);
                if (all.size() > limits.max_subgroups)
                    throw Error(ErrorKind::TooManySubgroups, "more than " + std::to_string(limits.max_subgroups) + " subgroups");
            }
        }
    }
    std::vector<Subgroup> out;
    for (auto& H : all)
        if (Z.is_subgroup_of(H)) out.push_back(H);
    return std::make_shared<const SubgroupPoset>(G, std::move(out));
}

std::vector<int> ab_filter(const SubgroupPoset& P, const std::vector<int>& vertices, const Subgroup& Z, LPosetKind kind) {
    std::vector<int> out;
    for (int v : vertices) {
        const Subgroup& H = P.member(v);
        bool keep = true;
        switch (kind) {
            case LPosetKind::S: break;
            case LPosetKind::SStar: keep = H != Z; break;
            case LPosetKind::Ab: keep = H.is_abelian(); break;
            case LPosetKind::AbStar: keep = H.is_abelian() && H != Z; break;
            case LPosetKind::AbZ: keep = commutator_subgroup(H).is_subgroup_of(Z); break;
        }
        if (keep) out.push_back(v);
    }
    return out;
}

LPoset make_lposet(const PosetPtr& all, int ell, const Subgroup& Z, LPosetKind kind) {
    LPoset L;
    L.kind = kind;
    L.ell = ell;
    L.Z = Z;
    L.all = all;
    std::vector<int> every(static_cast<std::size_t>(all->size()));
    for (int i = 0; i < all->size(); ++i) every[static_cast<std::size_t>(i)] = i;
    L.vertices = ab_filter(*all, every, Z, kind);
    return L;
}

}  // namespace brownlevi
