#include "brownlevi/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace brownlevi {

namespace {

Json big(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

CheckRecord equality(std::string name, const BigInt& lhs, const BigInt& rhs, bool asserted) {
    CheckRecord r;
    r.name = std::move(name);
    r.lhs = big(lhs);
    r.rhs = big(rhs);
    r.pass = lhs == rhs;
    r.asserted = asserted;
    return r;
}

CheckRecord tally(std::string name, std::size_t ok, std::size_t total, bool asserted, std::string detail = {}) {
    CheckRecord r;
    r.name = std::move(name);
    r.lhs = ok;
    r.rhs = total;
    r.pass = ok == total;
    r.asserted = asserted;
    r.detail = std::move(detail);
    return r;
}

Json homology_json(const HomologyProfile& h) {
    Json tor = Json::array();
    for (const auto& t : h.torsion) {
        Json row = Json::array();
        for (const auto& x : t) row.push_back(big(x));
        tor.push_back(row);
    }
    return Json{{"betti", h.betti}, {"torsion", tor}};
}

bool same_homology(const HomologyProfile& a, const HomologyProfile& b) {
    auto trim = [](std::vector<long long> v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };
    auto trim_t = [](std::vector<std::vector<BigInt>> v) {
        while (!v.empty() && v.back().empty()) v.pop_back();
        return v;
    };
    return a.empty == b.empty && trim(a.betti) == trim(b.betti) && trim_t(a.torsion) == trim_t(b.torsion);
}

std::vector<int> all_ids(const SubgroupPoset& P) {
    std::vector<int> v(static_cast<std::size_t>(P.size()));
    for (int i = 0; i < P.size(); ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

const GroupFunction kOne = [](const Subgroup&) { return BigInt(1); };
const GroupFunction kOrder = [](const Subgroup& H) { return BigInt(H.order()); };

template <class F>
CheckReport timed(const std::string& name, F&& body) {
    CheckReport rep;
    rep.check = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(rep);
    } catch (const Error& e) {
        rep.error = e;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void require_gl(const Workbench& wb, const char* check) {
    if (!wb.is_gl()) throw Error(ErrorKind::InvalidArgument, std::string(check) + " needs a general linear group");
}

}  // namespace

bool CheckReport::pass() const {
    if (error) return false;
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass || !r.asserted; });
}

// ---------------------------------------------------------------------------
// Workbench

Workbench::Workbench(const GroupSpec& spec, int ell, const Limits& limits)
    : label_(spec.to_string()), ell_(ell), limits_(limits) {
    if (spec.is_gl()) {
        ctx_ = GLContext::make(spec.n, spec.q, limits);
        G_ = ctx_->G;
        hypotheses_ = hypothesis_check(*ctx_, ell);
    } else {
        G_ = build_group(spec, limits.max_group_order);
    }
    if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell))) throw Error(ErrorKind::InvalidPrime, "ell must be prime");
}

Workbench::Workbench(GroupPtr G, int ell, const Limits& limits, std::string label)
    : label_(std::move(label)), G_(std::move(G)), ell_(ell), limits_(limits) {
    if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell))) throw Error(ErrorKind::InvalidPrime, "ell must be prime");
}

const ContextPtr& Workbench::context() const {
    if (!ctx_) throw Error(ErrorKind::InvalidArgument, label_ + " is not a general linear group");
    return ctx_;
}

int Workbench::e() const {
    if (!ctx_ || ell_ == 2 || ctx_->q % ell_ == 0) return 0;
    return e_ell(ell_, ctx_->q);
}

bool Workbench::hypotheses_ok() const { return hypotheses_hold(hypotheses_); }

int Workbench::valuation() const { return ell_valuation(BigInt(G_->order()), ell_); }

const PosetPtr& Workbench::subgroups() {
    if (!subgroups_) subgroups_ = enumerate_ell_subgroups(G_, ell_, trivial_subgroup(G_), limits_);
    return subgroups_;
}

const Subgroup& Workbench::central_ell() {
    if (!central_) central_ = ell_part_subgroup(center(whole_group(G_)), ell_);
    return *central_;
}

const PosetPtr& Workbench::anchored_subgroups() {
    if (!anchored_) {
        anchored_ = central_ell().is_trivial() ? subgroups() : enumerate_ell_subgroups(G_, ell_, central_ell(), limits_);
    }
    return anchored_;
}

const ChainOrbitTable& Workbench::brown() {
    if (!brown_) {
        const auto& P = subgroups();
        std::vector<int> v;
        for (int i = 0; i < P->size(); ++i)
            if (!P->member(i).is_trivial()) v.push_back(i);
        brown_ = chains_of(order_complex(P, v, Anchor::None, -1, limits_));
    }
    return *brown_;
}

const ChainOrbitTable& Workbench::s_anchored() {
    if (!s_anch_) {
        const auto& P = anchored_subgroups();
        s_anch_ = chains_of(order_complex(P, all_ids(*P), Anchor::Bottom, P->require(central_ell()), limits_));
    }
    return *s_anch_;
}

const ChainOrbitTable& Workbench::s_above_anchor() {
    if (!s_above_) {
        const auto& P = anchored_subgroups();
        const int a = P->require(central_ell());
        std::vector<int> v;
        for (int i = 0; i < P->size(); ++i)
            if (i != a) v.push_back(i);
        s_above_ = chains_of(order_complex(P, v, Anchor::None, -1, limits_));
    }
    return *s_above_;
}

const LeviEnumeration& Workbench::levis() {
    if (!levis_) {
        if (e() == 0) throw Error(ErrorKind::InvalidPrime, "e_ell(q) is undefined for this prime");
        levis_ = enumerate_e_split_levis(context(), e(), limits_);
    }
    return *levis_;
}

const ChainOrbitTable& Workbench::levi_star() {
    if (!levi_star_) {
        const auto& L = levis();
        std::vector<int> v;
        for (int i = 0; i < L.poset->size(); ++i)
            if (i != L.whole_id()) v.push_back(i);
        levi_star_ = chains_of(order_complex(L.poset, v, Anchor::None, -1, limits_));
    }
    return *levi_star_;
}

const ChainOrbitTable& Workbench::levi_full() {
    if (!levi_full_) {
        const auto& L = levis();
        levi_full_ = chains_of(order_complex(L.poset, all_ids(*L.poset), Anchor::Top, L.whole_id(), limits_));
    }
    return *levi_full_;
}

const ChainOrbitTable& Workbench::ab_closed() {
    if (!ab_closed_) {
        const auto& P = anchored_subgroups();
        const int a = P->require(central_ell());
        auto O = oracle();
        std::vector<int> v;
        for (int i = 0; i < P->size(); ++i)
            if (i == a || (P->member(i).is_abelian() && O->e_closed(i))) v.push_back(i);
        ab_closed_ = chains_of(order_complex(P, v, Anchor::Bottom, a, limits_));
    }
    return *ab_closed_;
}

const HomologyProfile& Workbench::brown_homology() {
    if (!brown_h_) brown_h_ = homology(brown().complex, limits_);
    return *brown_h_;
}

const HomologyProfile& Workbench::levi_homology() {
    if (!levi_h_) levi_h_ = homology(levi_star().complex, limits_);
    return *levi_h_;
}

std::shared_ptr<const ClosureEngine> Workbench::engine() {
    if (!engine_) {
        if (e() == 0) throw Error(ErrorKind::InvalidPrime, "e_ell(q) is undefined for this prime");
        engine_ = std::make_shared<ClosureEngine>(context(), ell_, e());
    }
    return engine_;
}

std::shared_ptr<const ClosureOracle> Workbench::oracle() {
    if (!oracle_) oracle_ = std::make_shared<EngineOracle>(anchored_subgroups(), engine());
    return oracle_;
}

template <class V>
V* Workbench::memo(std::map<std::uint64_t, std::vector<std::pair<Subgroup, V>>>& m, const Subgroup& H) {
    auto& bucket = m[H.fingerprint()];
    for (auto& [S, v] : bucket)
        if (S == H) return &v;
    return nullptr;
}

BigInt Workbench::k(const Subgroup& H) {
    if (auto* v = memo(k_, H)) return *v;
    const BigInt r = conjugacy_classes(H).k();
    k_[H.fingerprint()].emplace_back(H, r);
    return r;
}

BigInt Workbench::l(const Subgroup& H) {
    if (auto* v = memo(l_, H)) return *v;
    const BigInt r = conjugacy_classes(H).l_ell(ell_);
    l_[H.fingerprint()].emplace_back(H, r);
    return r;
}

const DefectProfile& Workbench::defects(const Subgroup& H) {
    if (auto* v = memo(defects_, H)) return *v;
    auto& bucket = defects_[H.fingerprint()];
    bucket.emplace_back(H, defect_profile(H, ell_, limits_));
    return bucket.back().second;
}

// ---------------------------------------------------------------------------
// Checks

CheckReport check_anchor_shift(Workbench& wb) {
    return timed("anchor-shift", [&](CheckReport& rep) {
        const Subgroup W = whole_group(wb.group());
        const Subgroup N = normalizer_in(W, wb.central_ell());
        for (auto [name, f] : {std::pair{"anchor-shift.chi", kOne}, std::pair{"anchor-shift.order", kOrder}}) {
            const BigInt lhs = alternating_sum(wb.s_anchored(), f);
            const BigInt rhs = f(N) - alternating_sum(wb.s_above_anchor(), f);
            rep.records.push_back(equality(name, lhs, rhs, true));
        }
    });
}

CheckReport check_brown(Workbench& wb) {
    return timed("brown", [&](CheckReport& rep) {
        const long long chi = euler_characteristic(wb.brown().complex);
        const BigInt m = ell_part(BigInt(wb.group()->order()), wb.ell());
        CheckRecord r;
        r.name = "brown.congruence";
        r.lhs = chi;
        r.rhs = 1;
        r.modulus = big(m);
        BigInt diff = BigInt(chi) - 1;
        r.pass = diff % m == 0;
        rep.records.push_back(r);
    });
}

CheckReport check_theorem_a(Workbench& wb) {
    return timed("theorem-a", [&](CheckReport& rep) {
        require_gl(wb, "theorem-a");
        const bool asserted = wb.hypotheses_ok();
        const auto& B = wb.brown();
        const auto& L = wb.levi_star();
        rep.records.push_back(
            equality("theorem-a.euler", euler_characteristic(B.complex), euler_characteristic(L.complex), asserted));
        CheckRecord h;
        h.name = "theorem-a.homology";
        h.lhs = homology_json(wb.brown_homology());
        h.rhs = homology_json(wb.levi_homology());
        h.pass = same_homology(wb.brown_homology(), wb.levi_homology());
        h.asserted = asserted;
        rep.records.push_back(h);

        const auto& P = wb.subgroups();
        int idx = 0;
        for (int rid : P->orbit_reps()) {
            const Subgroup& H = P->member(rid);
            const auto fb = fixed_subcomplex(B.complex, H, wb.limits());
            const auto fl = fixed_subcomplex(L.complex, H, wb.limits());
            auto r = equality("theorem-a.fixed[" + std::to_string(idx++) + "]", euler_characteristic(fb),
                              euler_characteristic(fl), asserted);
            r.detail = "|H| = " + std::to_string(H.order());
            rep.records.push_back(r);
        }

        // Fibres of A -> split Levi over each proper e-split Levi.
        const auto& lev = wb.levis();
        auto eng = wb.engine();
        std::vector<int> levi_of(static_cast<std::size_t>(P->size()), -1);
        for (int i = 0; i < P->size(); ++i) {
            const Subgroup& A = P->member(i);
            if (A.is_trivial() || !A.is_abelian()) continue;
            levi_of[static_cast<std::size_t>(i)] = lev.find(eng->split_levi(A));
            if (levi_of[static_cast<std::size_t>(i)] < 0)
                throw Error(ErrorKind::InvalidArgument, "split Levi of " + A.describe() + " is not enumerated");
        }
        std::size_t ok = 0, total = 0;
        std::string first_failure;
        for (int lid = 0; lid < lev.poset->size(); ++lid) {
            if (lid == lev.whole_id()) continue;
            ++total;
            std::vector<int> fibre;
            for (int i = 0; i < P->size(); ++i) {
                const int li = levi_of[static_cast<std::size_t>(i)];
                if (li >= 0 && lev.poset->leq(li, lid)) fibre.push_back(i);
            }
            const Subgroup A0 = z_ell_part(lev.levis[static_cast<std::size_t>(lid)].datum, wb.ell());
            const auto x0 = P->find(A0);
            bool pass = false;
            std::string why;
            if (!x0 || A0.is_trivial() || std::find(fibre.begin(), fibre.end(), *x0) == fibre.end()) {
                why = "central ell-part is not in the fibre";
            } else {
                const auto cert =
                    join_contractibility_certificate(P, fibre, *x0, lev.poset->normalizer(lid), wb.limits());
                pass = cert.pass;
                why = cert.detail;
            }
            if (pass) ++ok;
            else if (first_failure.empty())
                first_failure = lev.levis[static_cast<std::size_t>(lid)].type + ": " + why;
        }
        rep.records.push_back(tally("theorem-a.fibres", ok, total, asserted, first_failure));
    });
}

CheckReport check_corollary_b(Workbench& wb) {
    return timed("corollary-b", [&](CheckReport& rep) {
        require_gl(wb, "corollary-b");
        const bool asserted = wb.hypotheses_ok();
        const auto& ctx = *wb.context();
        const long long chi = euler_characteristic(wb.levi_star().complex);
        const int a = phi_valuation(order_poly_gl(ctx.n), wb.e());
        const BigInt phi = cyclotomic_poly(wb.e()).evaluate(ctx.q);
        const BigInt modulus = ell_part(boost::multiprecision::pow(phi, static_cast<unsigned>(a)), wb.ell());
        CheckRecord r;
        r.name = "corollary-b.congruence";
        r.lhs = chi;
        r.rhs = 1;
        r.modulus = big(modulus);
        r.pass = (BigInt(chi) - 1) % modulus == 0;
        r.asserted = asserted;
        r.detail = "a = " + std::to_string(a);
        rep.records.push_back(r);
        const BigInt sylow = ell_part(BigInt(ctx.G->order()), wb.ell());
        CheckRecord d;
        d.name = "corollary-b.divisibility";
        d.lhs = big(sylow);
        d.rhs = chi - 1;
        d.pass = (BigInt(chi) - 1) % sylow == 0;
        d.asserted = asserted;
        d.detail = "|G|_ell divides chi - 1";
        rep.records.push_back(d);
    });
}

CheckReport check_genericity(Workbench& a, Workbench& b) {
    return timed("genericity", [&](CheckReport& rep) {
        require_gl(a, "genericity");
        require_gl(b, "genericity");
        if (a.group() != b.group() && a.label() != b.label())
            throw Error(ErrorKind::InvalidArgument, "genericity compares two primes on one group");
        const bool same_e = a.e() == b.e() && a.e() != 0;
        const bool asserted = same_e && a.hypotheses_ok() && b.hypotheses_ok();
        CheckRecord e;
        e.name = "genericity.e";
        e.lhs = a.e();
        e.rhs = b.e();
        e.pass = same_e;
        e.asserted = false;
        rep.records.push_back(e);
        rep.records.push_back(tally("genericity.vertices", a.brown().complex.vertices.size(),
                                    b.brown().complex.vertices.size(), false));
        CheckRecord h;
        h.name = "genericity.homology";
        h.lhs = homology_json(a.brown_homology());
        h.rhs = homology_json(b.brown_homology());
        h.pass = same_homology(a.brown_homology(), b.brown_homology());
        h.asserted = asserted;
        rep.records.push_back(h);
        if (same_e) {
            for (auto* w : {&a, &b}) {
                CheckRecord r;
                r.name = "genericity.levi[" + std::to_string(w->ell()) + "]";
                r.lhs = homology_json(w->brown_homology());
                r.rhs = homology_json(w->levi_homology());
                r.pass = same_homology(w->brown_homology(), w->levi_homology());
                r.asserted = asserted;
                rep.records.push_back(r);
            }
        }
    });
}

CheckReport check_kr_webb(Workbench& wb) {
    return timed("kr-webb", [&](CheckReport& rep) {
        const Subgroup W = whole_group(wb.group());
        const BigInt k0 = wb.defects(W).k0();
        const BigInt lam = alternating_sum(wb.brown(), wb.l_fn()) - wb.l(W);
        rep.records.push_back(equality("kr-webb.brown", k0, -lam, true));
        if (wb.is_gl() && wb.e() != 0) {
            const BigInt lam_l = alternating_sum(wb.levi_star(), wb.l_fn()) - wb.l(W);
            rep.records.push_back(equality("kr-webb.levi", k0, -lam_l, wb.hypotheses_ok()));
        }
    });
}

CheckReport check_thevenaz(Workbench& wb) {
    return timed("thevenaz", [&](CheckReport& rep) {
        const Subgroup W = whole_group(wb.group());
        const BigInt lhs = wb.k(W) - BigInt(wb.defects(W).k0());
        rep.records.push_back(equality("thevenaz.brown", lhs, alternating_sum(wb.brown(), wb.k_fn()), true));
        if (wb.is_gl() && wb.e() != 0)
            rep.records.push_back(
                equality("thevenaz.levi", lhs, alternating_sum(wb.levi_star(), wb.k_fn()), wb.hypotheses_ok()));
    });
}

CheckReport check_cancellation(Workbench& wb) {
    return timed("cancellation", [&](CheckReport& rep) {
        require_gl(wb, "cancellation");
        const bool asserted = wb.hypotheses_ok();
        std::vector<std::pair<std::string, GroupFunction>> fs{{"const_1", kOne}, {"k", wb.k_fn()}, {"l", wb.l_fn()}};
        for (int d = 0; d <= wb.valuation(); ++d) fs.emplace_back("k^" + std::to_string(d), wb.kd_fn(d));
        for (const auto& [name, f] : fs) {
            const auto sums = cancellation_sums(f, {&wb.s_anchored(), &wb.ab_closed(), &wb.levi_full()});
            rep.records.push_back(equality("cancellation." + name + ".brown-closed", sums[0], sums[1], asserted));
            rep.records.push_back(equality("cancellation." + name + ".closed-levi", sums[1], sums[2], asserted));
        }
    });
}

CheckReport check_weights(Workbench& wb) {
    return timed("weights", [&](CheckReport& rep) {
        const auto w = count_weights(wb.group(), wb.ell(), wb.limits());
        auto r = equality("weights.count", wb.l(whole_group(wb.group())), BigInt(w.total), true);
        std::ostringstream os;
        for (const auto& t : w.terms)
            if (t.k0) os << "|Q|=" << t.Q.order() << ":" << t.k0 << " ";
        r.detail = os.str();
        rep.records.push_back(r);
    });
}

CheckReport check_alternations(Workbench& wb) {
    return timed("alternations", [&](CheckReport& rep) {
        const auto& cx = wb.s_anchored().complex;
        const auto& P = wb.anchored_subgroups();
        const auto autos = standard_automorphisms(wb.group());
        auto run = [&](AlternationKind kind, std::shared_ptr<const ClosureOracle> O, bool asserted) {
            const auto map = make_alternation(kind, P, O);
            const auto dom = alternation_domain(kind, P, O);
            const auto r = verify_alternation(map, domain_chains(cx, dom), dom.in_prime, *P, autos);
            CheckRecord c;
            c.name = std::string("alternations.") + alternation_name(kind);
            c.lhs = r.up;
            c.rhs = r.down;
            c.pass = r.pass && r.up == r.down;
            c.asserted = asserted;
            c.detail = "domain " + std::to_string(r.domain_size) + ", automorphisms " +
                       std::to_string(r.automorphisms) + (r.failure.empty() ? "" : ", " + r.failure);
            rep.records.push_back(c);
        };
        run(AlternationKind::Abelian, nullptr, true);
        if (wb.is_gl() && wb.e() != 0) {
            const bool asserted = wb.hypotheses_ok();
            for (auto k : {AlternationKind::Weak, AlternationKind::EClosed, AlternationKind::Composite})
                run(k, wb.oracle(), asserted);
        }
    });
}

CheckReport check_iota_delta(Workbench& wb) {
    return timed("iota-delta", [&](CheckReport& rep) {
        require_gl(wb, "iota-delta");
        const bool asserted = wb.hypotheses_ok();
        const auto& lev = wb.levis();
        const auto& P = wb.anchored_subgroups();
        const auto& eng = *wb.engine();
        std::size_t ok = 0;
        std::string fail;
        const auto& lc = wb.levi_full().complex;
        for (const auto& chain : lc.chains) {
            std::vector<LeviDatum> ls;
            for (int v : chain) ls.push_back(lev.levis[static_cast<std::size_t>(v)].datum);
            try {
                const auto as = iota(ls, wb.ell());
                Chain aids;
                for (const auto& A : as) aids.push_back(P->require(A));
                const auto back = delta(eng, as);
                Chain ids;
                for (const auto& L : back) ids.push_back(lev.find(L));
                const bool good = ids == chain && as.size() == chain.size() &&
                                  chain_stabilizer(*lev.poset, chain) == chain_stabilizer(*P, aids);
                if (good) ++ok;
                else if (fail.empty()) fail = "Levi chain not recovered";
            } catch (const Error& e) {
                if (fail.empty()) fail = e.what();
            }
        }
        rep.records.push_back(tally("iota-delta.levi-chains", ok, lc.chains.size(), asserted, fail));

        ok = 0;
        fail.clear();
        const auto& ac = wb.ab_closed().complex;
        for (const auto& chain : ac.chains) {
            std::vector<Subgroup> as;
            for (int v : chain) as.push_back(P->member(v));
            try {
                const auto ls = delta(eng, as);
                const auto again = iota(ls, wb.ell());
                Chain lids;
                for (const auto& L : ls) lids.push_back(lev.find(L));
                std::vector<int> back;
                for (const auto& A : again) back.push_back(P->require(A));
                Chain sorted = lids;
                std::sort(sorted.begin(), sorted.end());
                const bool good = back == chain && ls.size() == chain.size() &&
                                  chain_stabilizer(*P, chain) == chain_stabilizer(*lev.poset, sorted);
                if (good) ++ok;
                else if (fail.empty()) fail = "closed chain not recovered";
            } catch (const Error& e) {
                if (fail.empty()) fail = e.what();
            }
        }
        rep.records.push_back(tally("iota-delta.closed-chains", ok, ac.chains.size(), asserted, fail));
    });
}

CheckReport check_closures(Workbench& wb) {
    return timed("closures", [&](CheckReport& rep) {
        require_gl(wb, "closures");
        const bool asserted = wb.hypotheses_ok();
        const auto& ctx = wb.context();
        const auto& lev = wb.levis();
        const auto& P = wb.subgroups();
        const auto& eng = *wb.engine();
        const Subgroup W = whole_group(ctx->G);
        const Subgroup ZG = wb.central_ell();
        const auto autos = standard_automorphisms(ctx->G);
        const MatrixGroup& G = *ctx->G;

        std::vector<int> abel;
        for (int i = 0; i < P->size(); ++i)
            if (P->member(i).is_abelian()) abel.push_back(i);

        std::set<Subgroup> closed, centres;
        std::size_t cz_ok = 0;
        std::size_t props = 0, props_ok = 0;
        std::string fail;
        auto prop = [&](bool c, const char* what, const Subgroup& A) {
            ++props;
            if (c) ++props_ok;
            else if (fail.empty()) fail = std::string(what) + " fails at " + A.describe();
        };
        std::vector<Subgroup> gam(static_cast<std::size_t>(P->size())), om(static_cast<std::size_t>(P->size()));
        for (int i : abel) {
            const Subgroup& A = P->member(i);
            const Subgroup g = eng.gamma(A);
            const Subgroup w = eng.omega(A);
            gam[static_cast<std::size_t>(i)] = g;
            om[static_cast<std::size_t>(i)] = w;
            if (g == A) {
                closed.insert(A);
                if (lev.poset->find(connected_centralizer(ctx, A).subgroup())) ++cz_ok;
            }
            prop(ZG.is_subgroup_of(g), "Z(G)_ell <= gamma(A)", A);
            bool commute = true;
            for (Elem x : A.generators())
                for (Elem y : g.generators()) commute = commute && G.commutator(x, y) == G.identity();
            prop(commute, "[A, gamma(A)] = 1", A);
            prop(A.is_subgroup_of(w) && g.is_subgroup_of(w), "A gamma(A) <= omega(A)", A);
            prop(g.is_subgroup_of(ZG) == A.is_subgroup_of(ZG), "centre detection", A);
            if (g == A) prop(w == A, "closed implies weakly closed", A);
            if (w == A) prop(eng.is_weakly_e_closed(g), "gamma preserves weak closure", A);
            for (const auto& a : autos) {
                const Subgroup aA = apply_automorphism(a, A);
                prop(eng.gamma(aA) == apply_automorphism(a, g) && eng.omega(aA) == apply_automorphism(a, w),
                     "equivariance", A);
            }
            const auto st = eng.stabilize(A);
            prop(st.weak_closure == eng.omega(st.weak_closure) && eng.is_e_closed(st.closure), "stabilization", A);
        }
        for (int i : abel)
            for (int j : abel)
                if (i != j && P->leq(i, j)) {
                    const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
                    prop(gam[si].is_subgroup_of(gam[sj]) && om[si].is_subgroup_of(om[sj]), "monotonicity",
                         P->member(i));
                }
        for (const auto& entry : lev.levis) centres.insert(z_ell_part(entry.datum, wb.ell()));

        CheckRecord c;
        c.name = "closures.closed-are-centres";
        c.lhs = closed.size();
        c.rhs = centres.size();
        c.pass = closed == centres && closed.size() == lev.levis.size();
        c.asserted = asserted;
        c.detail = std::to_string(lev.levis.size()) + " e-split Levi subgroups";
        rep.records.push_back(c);
        rep.records.push_back(tally("closures.centralizers-are-levis", cz_ok, closed.size(), asserted));
        rep.records.push_back(tally("closures.properties", props_ok, props, asserted, fail));
    });
}

CheckReport check_characters(Workbench& wb) {
    return timed("characters", [&](CheckReport& rep) {
        std::vector<Subgroup> groups{whole_group(wb.group())};
        auto add_table = [&](const ChainOrbitTable& t) {
            for (const auto& o : t.orbits) groups.push_back(o.stabilizer);
        };
        add_table(wb.brown());
        if (wb.is_gl() && wb.e() != 0) {
            add_table(wb.s_anchored());
            add_table(wb.levi_star());
            add_table(wb.levi_full());
            add_table(wb.ab_closed());
        }
        std::sort(groups.begin(), groups.end());
        groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
        std::size_t ok = 0;
        std::string fail;
        for (const auto& H : groups) {
            const auto t = character_degrees(H, wb.limits());
            std::uint64_t s = 0;
            for (auto d : t.degrees) s += d * d;
            const bool good = s == H.order() && t.k() == conjugacy_classes(H).k() && t.orthogonality_ok;
            if (good) ++ok;
            else if (fail.empty()) fail = "table of " + H.describe();
        }
        rep.records.push_back(tally("characters.tables", ok, groups.size(), true, fail));
    });
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"theorem-a",   "corollary-b",  "genericity", "kr-webb",
                                                "thevenaz",    "cancellation", "weights",    "brown",
                                                "alternations", "iota-delta",  "closures",   "characters"};
    return names;
}

// ---------------------------------------------------------------------------
// Jobs and reports

bool VerificationReport::pass() const {
    if (error) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass(); });
}

bool VerificationReport::resource_failure() const {
    if (error && error->is_resource_limit()) return true;
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckReport& c) { return c.error && c.error->is_resource_limit(); });
}

namespace {

const std::vector<std::string> kGlOnly{"theorem-a", "corollary-b", "genericity", "cancellation", "iota-delta", "closures"};

std::vector<std::string> default_checks(const GroupSpec& s, bool has_ell2) {
    std::vector<std::string> out;
    if (s.is_gl()) out = {"brown", "theorem-a", "corollary-b", "kr-webb", "thevenaz", "cancellation", "weights"};
    else out = {"brown", "kr-webb", "thevenaz", "weights"};
    if (has_ell2 && s.is_gl()) out.push_back("genericity");
    return out;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void apply_limits(const Json& j, Limits& L) {
    if (!j.is_object()) throw Error(ErrorKind::Config, "limits must be an object");
    for (const auto& [key, v] : j.items()) {
        if (!v.is_number_unsigned()) throw Error(ErrorKind::Config, "limit '" + key + "' must be a non-negative integer");
        const auto x = v.get<std::uint64_t>();
        if (key == "max_group_order") L.max_group_order = x;
        else if (key == "max_sylow_order") L.max_sylow_order = x;
        else if (key == "max_subgroups") L.max_subgroups = x;
        else if (key == "max_simplices") L.max_simplices = x;
        else if (key == "max_char_order") L.max_char_order = x;
        else if (key == "max_char_classes") L.max_char_classes = x;
        else throw Error(ErrorKind::Config, "unknown limit '" + key + "'");
    }
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorKind::Config, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

void validate(VerificationJob& job) {
    GroupSpec spec;
    try {
        spec = GroupSpec::parse(job.group);
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, std::string("group '") + job.group + "': " + e.what());
    }
    if (job.ell < 2 || !is_prime(static_cast<std::uint64_t>(job.ell)))
        throw Error(ErrorKind::Config, "ell = " + std::to_string(job.ell) + " is not prime");
    if (job.ell2 && (*job.ell2 < 2 || !is_prime(static_cast<std::uint64_t>(*job.ell2))))
        throw Error(ErrorKind::Config, "ell2 = " + std::to_string(*job.ell2) + " is not prime");
    if (job.checks.empty()) job.checks = default_checks(spec, job.ell2.has_value());
    for (const auto& c : job.checks) {
        if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
            throw Error(ErrorKind::Config, "unknown check '" + c + "'");
        if (!spec.is_gl() && std::find(kGlOnly.begin(), kGlOnly.end(), c) != kGlOnly.end())
            throw Error(ErrorKind::Config, "check '" + c + "' needs a general linear group");
        if (c == "genericity" && !job.ell2) throw Error(ErrorKind::Config, "check 'genericity' needs ell2");
    }
}

}  // namespace

Limits parse_limits(const std::string& text, Limits base) {
    apply_limits(parse_json(text), base);
    return base;
}

RunConfig parse_config(const std::string& text) {
    const Json j = parse_json(text);
    if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    RunConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "limits") apply_limits(v, cfg.limits);
        else if (key == "timings") cfg.timings = v.get<bool>();
        else if (key == "threads") cfg.threads = std::max(1u, v.get<unsigned>());
        else if (key != "jobs") throw Error(ErrorKind::Config, "unknown field '" + key + "'");
    }
    if (!j.contains("jobs")) return cfg;
    if (!j["jobs"].is_array()) throw Error(ErrorKind::Config, "jobs must be an array");
    std::size_t idx = 0;
    for (const auto& jj : j["jobs"]) {
        const std::string where = "job " + std::to_string(idx++) + ": ";
        if (!jj.is_object()) throw Error(ErrorKind::Config, where + "must be an object");
        VerificationJob job;
        for (const auto& [key, v] : jj.items()) {
            if (key == "group" && v.is_string()) job.group = v.get<std::string>();
            else if (key == "ell" && v.is_number_integer()) job.ell = v.get<int>();
            else if (key == "ell2" && v.is_number_integer()) job.ell2 = v.get<int>();
            else if (key == "checks" && v.is_array()) {
                for (const auto& c : v) {
                    if (!c.is_string()) throw Error(ErrorKind::Config, where + "check names must be strings");
                    job.checks.push_back(c.get<std::string>());
                }
            } else {
                throw Error(ErrorKind::Config, where + "bad or unknown field '" + key + "'");
            }
        }
        if (job.group.empty()) throw Error(ErrorKind::Config, where + "missing 'group'");
        try {
            validate(job);
        } catch (const Error& e) {
            throw Error(ErrorKind::Config, where + e.what());
        }
        cfg.jobs.push_back(std::move(job));
    }
    return cfg;
}

VerificationReport run_job(const VerificationJob& job_in, std::size_t index, const Limits& limits) {
    VerificationJob job = job_in;
    validate(job);
    VerificationReport rep;
    rep.job = index;
    rep.group = job.group;
    rep.ell = job.ell;
    try {
        const GroupSpec spec = GroupSpec::parse(job.group);
        Workbench wb(spec, job.ell, limits);
        rep.e = wb.e();
        rep.hypotheses = wb.hypotheses();
        rep.checks.push_back(check_anchor_shift(wb));
        std::unique_ptr<Workbench> wb2;
        for (const auto& c : job.checks) {
            if (c == "theorem-a") rep.checks.push_back(check_theorem_a(wb));
            else if (c == "corollary-b") rep.checks.push_back(check_corollary_b(wb));
            else if (c == "kr-webb") rep.checks.push_back(check_kr_webb(wb));
            else if (c == "thevenaz") rep.checks.push_back(check_thevenaz(wb));
            else if (c == "cancellation") rep.checks.push_back(check_cancellation(wb));
            else if (c == "weights") rep.checks.push_back(check_weights(wb));
            else if (c == "brown") rep.checks.push_back(check_brown(wb));
            else if (c == "alternations") rep.checks.push_back(check_alternations(wb));
            else if (c == "iota-delta") rep.checks.push_back(check_iota_delta(wb));
            else if (c == "closures") rep.checks.push_back(check_closures(wb));
            else if (c == "characters") rep.checks.push_back(check_characters(wb));
            else if (c == "genericity") {
                if (!wb2) wb2 = std::make_unique<Workbench>(spec, *job.ell2, limits);
                rep.checks.push_back(check_genericity(wb, *wb2));
            }
        }
    } catch (const Error& e) {
        rep.error = e;
    }
    return rep;
}

std::vector<VerificationReport> run_jobs(const RunConfig& config) {
    std::vector<VerificationReport> out(config.jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < config.jobs.size();) out[i] = run_job(config.jobs[i], i, config.limits);
    };
    const unsigned n = std::min<unsigned>(config.threads, static_cast<unsigned>(std::max<std::size_t>(1, config.jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

Json to_json(const VerificationReport& r, bool timings) {
    Json j;
    j["job"] = r.job;
    j["group"] = r.group;
    j["ell"] = r.ell;
    j["e"] = r.e;
    Json hyp = Json::array();
    for (const auto& h : r.hypotheses) hyp.push_back({{"name", h.name}, {"pass", h.pass}, {"detail", h.detail}});
    j["hypotheses"] = hyp;
    Json checks = Json::array();
    Json times = Json::object();
    for (const auto& c : r.checks) {
        for (const auto& rec : c.records) {
            Json x{{"name", rec.name}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"pass", rec.pass}, {"asserted", rec.asserted}};
            if (rec.modulus) x["modulus"] = *rec.modulus;
            if (!rec.detail.empty()) x["detail"] = rec.detail;
            checks.push_back(x);
        }
        if (c.error)
            checks.push_back({{"name", c.check + ".error"},
                              {"lhs", nullptr},
                              {"rhs", nullptr},
                              {"pass", false},
                              {"asserted", true},
                              {"error", error_kind_name(c.error->kind())},
                              {"detail", c.error->what()}});
        times[c.check] = c.seconds;
    }
    j["checks"] = checks;
    if (r.error) j["error"] = {{"kind", error_kind_name(r.error->kind())}, {"detail", r.error->what()}};
    j["pass"] = r.pass();
    if (timings) j["timings"] = times;
    return j;
}

Json to_json(const std::vector<VerificationReport>& rs, bool timings) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(to_json(r, timings));
    return a;
}

std::string to_csv(const std::vector<VerificationReport>& rs) {
    auto quote = [](const std::string& s) {
        std::string o = "\"";
        for (char c : s) {
            if (c == '"') o += '"';
            o += c;
        }
        return o + "\"";
    };
    std::ostringstream os;
    os << "job,group,ell,e,name,lhs,rhs,modulus,pass,asserted\n";
    for (const auto& r : rs) {
        for (const auto& c : r.checks) {
            for (const auto& rec : c.records)
                os << r.job << ',' << quote(r.group) << ',' << r.ell << ',' << r.e << ',' << rec.name << ','
                   << quote(rec.lhs.dump()) << ',' << quote(rec.rhs.dump()) << ','
                   << (rec.modulus ? quote(rec.modulus->dump()) : "") << ',' << (rec.pass ? "true" : "false") << ','
                   << (rec.asserted ? "true" : "false") << '\n';
            if (c.error)
                os << r.job << ',' << quote(r.group) << ',' << r.ell << ',' << r.e << ',' << c.check << ".error,"
                   << quote(c.error->what()) << ",,,false,true\n";
        }
        if (r.error)
            os << r.job << ',' << quote(r.group) << ',' << r.ell << ',' << r.e << ",job.error," << quote(r.error->what())
               << ",,,false,true\n";
    }
    return os.str();
}

int exit_status(const std::vector<VerificationReport>& rs) {
    if (std::any_of(rs.begin(), rs.end(), [](const VerificationReport& r) { return r.resource_failure(); })) return 3;
    if (std::any_of(rs.begin(), rs.end(), [](const VerificationReport& r) { return !r.pass(); })) return 1;
    return 0;
}

}  // namespace brownlevi
