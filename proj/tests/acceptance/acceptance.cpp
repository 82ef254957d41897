// Acceptance run: one PASS/FAIL line per criterion.
#include "brownlevi/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

using namespace brownlevi;

namespace {

const Limits kLimits{};

struct Instance {
    std::string spec;
    int ell;
};

const std::vector<Instance> kLeviInstances{
    {"gl:n=2,q=4", 5}, {"gl:n=2,q=5", 3}, {"gl:n=3,q=2", 7}, {"gl:n=3,q=3", 13}, {"gl:n=4,q=2", 3}};

std::map<std::string, std::unique_ptr<Workbench>> benches;

Workbench& bench(const std::string& spec, int ell) {
    const std::string key = spec + "/" + std::to_string(ell);
    auto& slot = benches[key];
    if (!slot) slot = std::make_unique<Workbench>(GroupSpec::parse(spec), ell, kLimits);
    return *slot;
}

std::string name_of(const Workbench& wb) { return wb.label() + " l=" + std::to_string(wb.ell()); }

const CheckRecord* find(const CheckReport& r, const std::string& name) {
    for (const auto& x : r.records)
        if (x.name == name) return &x;
    return nullptr;
}

// Collects failures for one criterion.
struct Verdict {
    bool ok = true;
    std::size_t identities = 0;
    std::vector<std::string> notes;

    void need(bool c, const std::string& what) {
        ++identities;
        if (!c) {
            ok = false;
            notes.push_back(what);
        }
    }
    void report(const CheckReport& r, const std::string& where, const std::function<bool(const CheckRecord&)>& pick) {
        if (r.error) {
            need(false, where + " " + r.check + ": " + r.error->what());
            return;
        }
        bool any = false;
        for (const auto& x : r.records) {
            if (!pick(x)) continue;
            any = true;
            need(x.pass && x.asserted, where + " " + x.name + " lhs=" + x.lhs.dump() + " rhs=" + x.rhs.dump() +
                                           (x.detail.empty() ? "" : " (" + x.detail + ")"));
        }
        if (!any) need(false, where + " " + r.check + ": no records");
    }
    void report(const CheckReport& r, const std::string& where) {
        report(r, where, [](const CheckRecord&) { return true; });
    }
};

int failures = 0;

void emit(int n, const std::string& title, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.need(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.ok) ++failures;
    std::ostringstream line;
    line << (v.ok ? "PASS" : "FAIL") << " [" << n << "] " << title << " (" << v.identities << " identities, ";
    line.precision(1);
    line << std::fixed << s << " s)";
    std::cout << line.str() << "\n";
    for (const auto& note : v.notes) std::cout << "       " << note << "\n";
    std::cout.flush();
}

bool has_nonabelian(Workbench& wb) {
    const auto& P = wb.subgroups();
    for (int i = 0; i < P->size(); ++i)
        if (!P->member(i).is_abelian()) return true;
    return false;
}

}  // namespace

int main() {
    emit(1, "Brown congruence", [](Verdict& v) {
        for (auto [spec, ell] : std::vector<Instance>{{"perm:sym=4", 2}, {"perm:sym=5", 2}, {"perm:sym=5", 3},
                                                      {"gl:n=2,q=4", 5}, {"gl:n=2,q=5", 3}, {"gl:n=3,q=2", 7},
                                                      {"gl:n=3,q=3", 13}, {"gl:n=4,q=2", 3}}) {
            auto& wb = bench(spec, ell);
            v.report(check_anchor_shift(wb), name_of(wb));
            v.report(check_brown(wb), name_of(wb));
        }
    });

    std::map<std::string, CheckReport> theorem_a;
    emit(2, "Brown complex vs e-split Levi complex invariants", [&](Verdict& v) {
        const std::map<std::string, long long> spot{{"gl:n=2,q=4", 6}, {"gl:n=3,q=2", 8}, {"gl:n=3,q=3", 144}};
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            v.need(wb.hypotheses_ok(), name_of(wb) + " hypotheses");
            v.need(wb.e() == e_ell(ell, GroupSpec::parse(spec).q), name_of(wb) + " e");
            auto r = check_theorem_a(wb);
            v.report(r, name_of(wb), [](const CheckRecord& x) { return x.name != "theorem-a.fibres"; });
            if (auto it = spot.find(spec); it != spot.end()) {
                const auto* e = find(r, "theorem-a.euler");
                v.need(e && e->lhs == it->second && e->rhs == it->second,
                       name_of(wb) + " chi spot value " + std::to_string(it->second));
            }
            theorem_a.emplace(spec, std::move(r));
        }
    });

    emit(3, "Fibre join-contractibility certificates", [&](Verdict& v) {
        for (const auto& [spec, ell] : kLeviInstances) {
            const auto& r = theorem_a.at(spec);
            v.report(r, spec, [](const CheckRecord& x) { return x.name == "theorem-a.fibres"; });
            const auto* f = find(r, "theorem-a.fibres");
            v.need(f && f->rhs.get<std::size_t>() > 0, spec + " has proper e-split Levi subgroups");
        }
    });

    emit(4, "Levi complex Euler characteristic congruence and divisibility", [](Verdict& v) {
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            const auto r = check_corollary_b(wb);
            v.report(r, name_of(wb));
            if (spec == "gl:n=4,q=2") {
                const auto* c = find(r, "corollary-b.congruence");
                v.need(c && c->modulus && *c->modulus == 9, "GL_4(2) modulus is 9");
            }
        }
    });

    emit(5, "Genericity in ell", [](Verdict& v) {
        auto& a = bench("gl:n=2,q=29", 3);
        auto& b = bench("gl:n=2,q=29", 5);
        for (auto* w : {&a, &b}) {
            const auto& cx = w->brown().complex;
            int dim = -1;
            for (std::size_t i = 0; i < cx.size(); ++i) dim = std::max(dim, cx.dim(i));
            v.need(cx.vertices.size() == 406, name_of(*w) + " has 406 vertices (got " + std::to_string(cx.vertices.size()) + ")");
            v.need(dim == 0, name_of(*w) + " is 0-dimensional");
            v.need(w->e() == 2, name_of(*w) + " e = 2");
        }
        const auto r = check_genericity(a, b);
        v.report(r, "GL_2(29)", [](const CheckRecord& x) { return x.asserted; });
        // Contrast: e = 1 against e = 2, reported only.
        auto& c = bench("gl:n=2,q=11", 5);
        auto& d = bench("gl:n=2,q=11", 3);
        const auto rc = check_genericity(c, d);
        v.need(!rc.error, "GL_2(11) contrast runs");
        for (const auto& x : rc.records) {
            v.need(!x.asserted, "GL_2(11) " + x.name + " is not asserted");
            std::cout << "       contrast GL_2(11) " << x.name << ": " << x.lhs.dump() << " vs " << x.rhs.dump() << "\n";
        }
    });

    emit(6, "Alternation suites", [](Verdict& v) {
        const auto F3 = [](std::initializer_list<int> e) {
            FqMatrix m(2, 2);
            int i = 0;
            for (int x : e) m.a[i++] = static_cast<std::uint8_t>(x);
            return m;
        };
        auto q8 = build_from_generators(3, 2, {F3({0, 2, 1, 0}), F3({1, 1, 1, 2})}, "Q8");
        Workbench wq(q8, 2, kLimits, "Q8");
        v.need(wq.central_ell().order() == 2, "Q8 anchor is Z(Q8)");
        v.report(check_alternations(wq), "Q8/Z(Q8)");
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            const auto r = check_alternations(wb);
            const bool nonab = has_nonabelian(wb);
            if (nonab) v.report(r, name_of(wb), [](const CheckRecord& x) { return x.name == "alternations.phi1"; });
            if (spec == "gl:n=4,q=2")
                v.report(r, name_of(wb), [](const CheckRecord& x) { return x.name != "alternations.phi1"; });
        }
    });

    emit(7, "Cancellation equalities", [](Verdict& v) {
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            v.report(check_cancellation(wb), name_of(wb));
        }
    });

    emit(8, "iota and delta are mutually inverse", [](Verdict& v) {
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            v.report(check_iota_delta(wb), name_of(wb));
        }
    });

    emit(9, "Closure characterization and gamma/omega properties", [](Verdict& v) {
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            v.report(check_closures(wb), name_of(wb));
        }
    });

    emit(10, "Defect-zero identities over Brown and Levi complexes", [](Verdict& v) {
        for (auto [spec, ell] : std::vector<Instance>{{"gl:n=2,q=4", 5}, {"gl:n=2,q=5", 3}, {"gl:n=3,q=2", 7}}) {
            auto& wb = bench(spec, ell);
            const auto kr = check_kr_webb(wb);
            const auto th = check_thevenaz(wb);
            v.report(kr, name_of(wb));
            v.report(th, name_of(wb));
            v.need(find(kr, "kr-webb.levi") && find(th, "thevenaz.levi"), name_of(wb) + " Levi complex evaluated");
        }
        for (const char* spec : {"perm:sym=3", "cyc:n=3"}) {
            auto& wb = bench(spec, 3);
            const auto kr = check_kr_webb(wb);
            const auto th = check_thevenaz(wb);
            v.report(kr, name_of(wb));
            v.report(th, name_of(wb));
            const auto* a = find(kr, "kr-webb.brown");
            const auto* b = find(th, "thevenaz.brown");
            v.need(a && b && a->lhs == 0 && b->lhs == 3, name_of(wb) + " calibrates to (0, 3)");
        }
    });

    emit(11, "Weight counts", [](Verdict& v) {
        for (auto [spec, ell] : std::vector<Instance>{{"perm:sym=3", 3}, {"perm:sym=4", 3}, {"gl:n=2,q=4", 5}, {"gl:n=3,q=2", 7}}) {
            auto& wb = bench(spec, ell);
            v.report(check_weights(wb), name_of(wb));
        }
    });

    emit(12, "Character tables", [](Verdict& v) {
        for (const auto& [spec, ell] : kLeviInstances) {
            auto& wb = bench(spec, ell);
            v.report(check_characters(wb), name_of(wb));
        }
        for (const char* spec : {"perm:sym=3", "cyc:n=3"}) {
            auto& wb = bench(spec, 3);
            v.report(check_characters(wb), name_of(wb));
        }
        auto t = character_degrees(whole_group(build_gl(2, 3)), kLimits);
        auto d = t.degrees;
        std::sort(d.begin(), d.end());
        v.need(d == std::vector<std::uint64_t>{1, 1, 2, 2, 2, 3, 3, 4}, "GL_2(3) degrees");
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
