#include "brownlevi/alternations.hpp"

#include <algorithm>
#include <unordered_set>

namespace brownlevi {

namespace {

std::string chain_string(const SubgroupPoset& P, const Chain& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += " < ";
        s += P.member(c[i]).describe();
    }
    return s + "}";
}

Error in_domain(const std::string& what) { return Error(ErrorKind::InDomain, what); }

// Lazily computed per-member flags shared by predicates.
class MemberFlags {
public:
    MemberFlags(std::size_t n, std::function<bool(int)> f) : f_(std::move(f)), v_(n, -1) {}
    bool operator()(int id) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto& slot = v_[static_cast<std::size_t>(id)];
        if (slot < 0) slot = f_(id) ? 1 : 0;
        return slot == 1;
    }

private:
    std::function<bool(int)> f_;
    mutable std::mutex mu_;
    mutable std::vector<signed char> v_;
};

}  // namespace

int ClosureOracle::weak_closure(int id) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (weak_.empty()) weak_.assign(static_cast<std::size_t>(poset_->size()), -1);
        if (weak_[static_cast<std::size_t>(id)] >= 0) return weak_[static_cast<std::size_t>(id)];
    }
    int cur = id;
    for (int steps = 0;; ++steps) {
        const int next = omega(cur);
        if (next == cur) break;
        cur = next;
        if (steps > poset_->size()) throw Error(ErrorKind::InvalidArgument, "omega iteration did not stabilize");
    }
    std::lock_guard<std::mutex> lk(mu_);
    weak_[static_cast<std::size_t>(id)] = cur;
    return cur;
}

int ClosureOracle::closure(int id) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (closed_.empty()) closed_.assign(static_cast<std::size_t>(poset_->size()), -1);
        if (closed_[static_cast<std::size_t>(id)] >= 0) return closed_[static_cast<std::size_t>(id)];
    }
    int cur = id;
    for (int steps = 0;; ++steps) {
        const int next = gamma(cur);
        if (next == cur) break;
        cur = next;
        if (steps > poset_->size()) throw Error(ErrorKind::InvalidArgument, "gamma iteration did not stabilize");
    }
    std::lock_guard<std::mutex> lk(mu_);
    closed_[static_cast<std::size_t>(id)] = cur;
    return cur;
}

EngineOracle::EngineOracle(PosetPtr poset, std::shared_ptr<const ClosureEngine> engine)
    : ClosureOracle(std::move(poset)), engine_(std::move(engine)) {
    const auto& ctx = *engine_->context();
    ok_ = hypotheses_hold(hypothesis_check(ctx, engine_->ell())) && e_ell(engine_->ell(), ctx.q) == engine_->e();
}

int EngineOracle::gamma(int id) const { return poset().require(engine_->gamma(poset().member(id))); }

int EngineOracle::omega(int id) const { return poset().require(engine_->omega(poset().member(id))); }

TableOracle::TableOracle(PosetPtr poset, std::vector<int> gamma_table)
    : ClosureOracle(std::move(poset)), gamma_(std::move(gamma_table)) {
    if (static_cast<int>(gamma_.size()) != this->poset().size())
        throw Error(ErrorKind::InvalidArgument, "gamma table size mismatch");
    for (int i = 0; i < this->poset().size(); ++i)
        omega_.push_back(this->poset().require(
            product_subgroup(this->poset().member(i), this->poset().member(gamma_[static_cast<std::size_t>(i)]))));
}

Chain phi_abelian(const SubgroupPoset& P, const Chain& sigma) {
    if (sigma.size() < 2) throw in_domain("phi_abelian: chain ends at its anchor");
    const Subgroup& top = P.member(sigma.back());
    const Subgroup D = commutator_subgroup(top);
    if (D.is_subgroup_of(P.member(sigma.front()))) throw in_domain("phi_abelian: top term is abelian over the anchor");
    std::size_t m = 1;
    while (!D.is_subgroup_of(P.member(sigma[m]))) ++m;
    const int X = P.require(product_subgroup(D, P.member(sigma[m - 1])));
    Chain out = sigma;
    if (X != sigma[m])
        out.insert(out.begin() + static_cast<long>(m), X);
    else
        out.erase(out.begin() + static_cast<long>(m));
    return out;
}

Chain phi_weak(const ClosureOracle& O, const Chain& sigma) {
    const SubgroupPoset& P = O.poset();
    for (int v : sigma)
        if (!P.member(v).is_abelian()) throw in_domain("phi_weak: chain has a nonabelian term");
    const std::size_t n = sigma.size() - 1;
    std::size_t m = sigma.size();
    for (std::size_t i = sigma.size(); i-- > 0;)
        if (O.weak_closure(sigma[i]) != sigma[i]) {
            m = i;
            break;
        }
    if (m == sigma.size()) throw in_domain("phi_weak: every term is weakly e-closed");
    if (m == 0) throw Error(ErrorKind::Hypothesis, "phi_weak: anchor is not weakly e-closed");
    const int Pm = O.weak_closure(sigma[m]);
    Chain out = sigma;
    if (m == n)
        out.push_back(Pm);
    else if (Pm == sigma[m + 1])
        out.erase(out.begin() + static_cast<long>(m + 1));
    else
        out.insert(out.begin() + static_cast<long>(m + 1), Pm);
    return out;
}

Chain phi_eclosed(const ClosureOracle& O, const Chain& sigma) {
    if (!O.hypotheses_ok()) throw Error(ErrorKind::Hypothesis, "phi_eclosed: ell-prime conditions fail");
    const SubgroupPoset& P = O.poset();
    for (int v : sigma)
        if (!P.member(v).is_abelian() || !O.weakly_e_closed(v))
            throw in_domain("phi_eclosed: chain has a term that is not weakly e-closed");
    std::size_t m = 0;
    while (m < sigma.size() && O.e_closed(sigma[m])) ++m;
    if (m == sigma.size()) throw in_domain("phi_eclosed: every term is e-closed");
    if (m == 0) throw Error(ErrorKind::Hypothesis, "phi_eclosed: anchor is not e-closed");
    const int Pm = O.closure(sigma[m]);
    Chain out = sigma;
    if (Pm == sigma[m - 1]) {
        if (m == 1) throw Error(ErrorKind::Hypothesis, "phi_eclosed: closure collapses onto the anchor");
        out.erase(out.begin() + static_cast<long>(m - 1));
    } else {
        out.insert(out.begin() + static_cast<long>(m), Pm);
    }
    return out;
}

Chain phi_composite(const ClosureOracle& O, const Chain& sigma) {
    const SubgroupPoset& P = O.poset();
    for (int v : sigma)
        if (!P.member(v).is_abelian()) return phi_abelian(P, sigma);
    for (int v : sigma)
        if (!O.weakly_e_closed(v)) return phi_weak(O, sigma);
    for (int v : sigma)
        if (!O.e_closed(v)) return phi_eclosed(O, sigma);
    throw in_domain("phi_composite: every term is abelian and e-closed");
}

const char* alternation_name(AlternationKind k) {
    switch (k) {
        case AlternationKind::Abelian: return "phi1";
        case AlternationKind::Weak: return "phi2";
        case AlternationKind::EClosed: return "phi3";
        case AlternationKind::Composite: return "composite";
    }
    return "?";
}

AlternationMap make_alternation(AlternationKind kind, const PosetPtr& poset, std::shared_ptr<const ClosureOracle> oracle) {
    AlternationMap m;
    m.label = alternation_name(kind);
    if (kind != AlternationKind::Abelian && !oracle)
        throw Error(ErrorKind::InvalidArgument, "closure alternations need an oracle");
    switch (kind) {
        case AlternationKind::Abelian: m.apply = [poset](const Chain& c) { return phi_abelian(*poset, c); }; break;
        case AlternationKind::Weak: m.apply = [oracle](const Chain& c) { return phi_weak(*oracle, c); }; break;
        case AlternationKind::EClosed: m.apply = [oracle](const Chain& c) { return phi_eclosed(*oracle, c); }; break;
        case AlternationKind::Composite: m.apply = [oracle](const Chain& c) { return phi_composite(*oracle, c); }; break;
    }
    return m;
}

AlternationDomain alternation_domain(AlternationKind kind, const PosetPtr& poset,
                                     std::shared_ptr<const ClosureOracle> oracle) {
    const auto n = static_cast<std::size_t>(poset->size());
    auto abelian = std::make_shared<MemberFlags>(n, [poset](int v) { return poset->member(v).is_abelian(); });
    auto all = [](std::shared_ptr<MemberFlags> f) {
        return [f](const Chain& c) { return std::all_of(c.begin(), c.end(), [&](int v) { return (*f)(v); }); };
    };
    AlternationDomain d;
    switch (kind) {
        case AlternationKind::Abelian: {
            d.in_delta = [](const Chain&) { return true; };
            d.in_prime = [poset](const Chain& c) {
                return commutator_subgroup(poset->member(c.back())).is_subgroup_of(poset->member(c.front()));
            };
            break;
        }
        case AlternationKind::Weak: {
            auto weak = std::make_shared<MemberFlags>(
                n, [poset, oracle, abelian](int v) { return (*abelian)(v) && oracle->weakly_e_closed(v); });
            d.in_delta = all(abelian);
            d.in_prime = all(weak);
            break;
        }
        case AlternationKind::EClosed: {
            auto weak = std::make_shared<MemberFlags>(
                n, [poset, oracle, abelian](int v) { return (*abelian)(v) && oracle->weakly_e_closed(v); });
            auto closed = std::make_shared<MemberFlags>(
                n, [poset, oracle, abelian](int v) { return (*abelian)(v) && oracle->e_closed(v); });
            d.in_delta = all(weak);
            d.in_prime = all(closed);
            break;
        }
        case AlternationKind::Composite: {
            auto closed = std::make_shared<MemberFlags>(
                n, [poset, oracle, abelian](int v) { return (*abelian)(v) && oracle->e_closed(v); });
            d.in_delta = [](const Chain&) { return true; };
            d.in_prime = all(closed);
            break;
        }
    }
    if (kind != AlternationKind::Abelian && !oracle) throw Error(ErrorKind::InvalidArgument, "closure domains need an oracle");
    return d;
}

std::vector<int> automorphism_action(const SubgroupPoset& P, const Automorphism& a) {
    std::vector<int> perm(static_cast<std::size_t>(P.size()));
    for (int i = 0; i < P.size(); ++i) perm[static_cast<std::size_t>(i)] = P.require(apply_automorphism(a, P.member(i)));
    return perm;
}

AlternationReport verify_alternation(const AlternationMap& phi, const std::vector<Chain>& delta,
                                     const std::function<bool(const Chain&)>& in_prime, const SubgroupPoset& P,
                                     const std::vector<Automorphism>& autos) {
    AlternationReport r;
    r.label = phi.label;
    r.automorphisms = autos.size();
    std::unordered_set<Chain, ChainHash> members(delta.begin(), delta.end());
    std::vector<std::vector<int>> actions;
    for (const auto& a : autos) actions.push_back(automorphism_action(P, a));
    auto act = [&](const std::vector<int>& perm, const Chain& c) {
        Chain out;
        for (int v : c) out.push_back(perm[static_cast<std::size_t>(v)]);
        return out;
    };
    auto fail = [&](const Chain& c, std::string why) {
        if (!r.pass) return;
        r.pass = false;
        r.counterexample = c;
        r.failure = why + " at " + chain_string(P, c);
    };
    for (const Chain& s : delta) {
        if (in_prime(s)) continue;
        ++r.domain_size;
        r.sign_sum += (s.size() % 2 == 1) ? 1 : -1;
        Chain t;
        try {
            t = phi.apply(s);
        } catch (const Error& e) {
            fail(s, std::string("map raised: ") + e.what());
            continue;
        }
        if (!members.count(t)) fail(s, "image outside Delta");
        else if (in_prime(t)) fail(s, "image inside Delta'");
        const long diff = static_cast<long>(t.size()) - static_cast<long>(s.size());
        if (diff == 1) ++r.up;
        else if (diff == -1) ++r.down;
        else fail(s, "dimension does not change by one");
        try {
            if (phi.apply(t) != s) fail(s, "not an involution");
        } catch (const Error& e) {
            fail(s, std::string("map raised on image: ") + e.what());
        }
        for (std::size_t k = 0; k < actions.size() && r.pass; ++k) {
            try {
                if (phi.apply(act(actions[k], s)) != act(actions[k], t))
                    fail(s, "not equivariant under " + autos[k].describe());
            } catch (const Error& e) {
                fail(s, std::string("map raised on a conjugate: ") + e.what());
            }
        }
        if (r.pass && chain_stabilizer(P, s) != chain_stabilizer(P, t)) fail(s, "stabilizers differ");
    }
    if (r.pass && r.sign_sum != 0) {
        r.pass = false;
        r.failure = "signs over the domain do not cancel";
    }
    return r;
}

std::vector<Chain> domain_chains(const ChainComplex& c, const AlternationDomain& d) {
    std::vector<Chain> out;
    for (const auto& s : c.chains)
        if (d.in_delta(s)) out.push_back(s);
    return out;
}

std::vector<BigInt> cancellation_sums(const GroupFunction& f, const std::vector<const ChainOrbitTable*>& complexes) {
    std::vector<BigInt> out;
    for (const auto* t : complexes) out.push_back(alternating_sum(*t, f));
    return out;
}

BigInt orbit_sum_where(const ChainOrbitTable& t, const GroupFunction& f, const std::function<bool(const Chain&)>& pred) {
    BigInt s = 0;
    for (const auto& o : t.orbits) {
        if (!pred(t.complex.chains[static_cast<std::size_t>(o.rep)])) continue;
        const BigInt v = f(o.stabilizer);
        if (o.dim % 2 == 0) s += v;
        else s -= v;
    }
    return s;
}

}  // namespace brownlevi
