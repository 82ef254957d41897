#pragma once

#include "brownlevi/alternations.hpp"
#include "brownlevi/characters.hpp"
#include "brownlevi/contractibility.hpp"
#include "brownlevi/group_spec.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brownlevi {

using Json = nlohmann::json;

// One identity or congruence: both computed sides and the verdict. Records
// with asserted = false are reported without affecting the exit status.
struct CheckRecord {
    std::string name;
    Json lhs;
    Json rhs;
    std::optional<Json> modulus;
    bool pass = false;
    bool asserted = true;
    std::string detail;
};

struct CheckReport {
    std::string check;
    std::vector<CheckRecord> records;
    double seconds = 0;
    std::optional<Error> error;
    bool pass() const;  // every asserted record passes and no error
};

// Lazily built data for one (group, ell) instance. Not thread-safe; each job owns one.
class Workbench {
public:
    Workbench(const GroupSpec& spec, int ell, const Limits& limits);
    Workbench(GroupPtr G, int ell, const Limits& limits, std::string label);

    const std::string& label() const { return label_; }
    const GroupPtr& group() const { return G_; }
    int ell() const { return ell_; }
    const Limits& limits() const { return limits_; }
    bool is_gl() const { return static_cast<bool>(ctx_); }
    const ContextPtr& context() const;  // throws InvalidArgument for non-GL groups
    int e() const;                      // e_ell(q); 0 for non-GL groups
    const std::vector<HypothesisItem>& hypotheses() const { return hypotheses_; }
    bool hypotheses_ok() const;

    // All ell-subgroups of G.
    const PosetPtr& subgroups();
    // Z(G)_ell and the ell-subgroups containing it.
    const Subgroup& central_ell();
    const PosetPtr& anchored_subgroups();
    // Brown complex of nontrivial ell-subgroups, unanchored.
    const ChainOrbitTable& brown();
    // Chains of the ell-subgroups above Z(G)_ell, starting at it / with it removed.
    const ChainOrbitTable& s_anchored();
    const ChainOrbitTable& s_above_anchor();
    const LeviEnumeration& levis();
    // Proper e-split Levi subgroups, unanchored.
    const ChainOrbitTable& levi_star();
    // Chains of e-split Levi subgroups ending at G.
    const ChainOrbitTable& levi_full();
    // Chains of e-closed abelian ell-subgroups starting at Z(G)_ell.
    const ChainOrbitTable& ab_closed();
    const HomologyProfile& brown_homology();
    const HomologyProfile& levi_homology();
    std::shared_ptr<const ClosureEngine> engine();
    std::shared_ptr<const ClosureOracle> oracle();

    // G-stable functions, memoized per subgroup.
    BigInt k(const Subgroup& H);
    BigInt l(const Subgroup& H);
    const DefectProfile& defects(const Subgroup& H);
    BigInt kd(const Subgroup& H, int d) { return BigInt(defects(H).kd(d)); }
    GroupFunction k_fn() {
        return [this](const Subgroup& H) { return k(H); };
    }
    GroupFunction l_fn() {
        return [this](const Subgroup& H) { return l(H); };
    }
    GroupFunction kd_fn(int d) {
        return [this, d](const Subgroup& H) { return kd(H, d); };
    }
    int valuation() const;  // v_ell(|G|)

private:
    template <class V>
    V* memo(std::map<std::uint64_t, std::vector<std::pair<Subgroup, V>>>& m, const Subgroup& H);

    std::string label_;
    GroupPtr G_;
    ContextPtr ctx_;
    int ell_ = 0;
    Limits limits_;
    std::vector<HypothesisItem> hypotheses_;
    PosetPtr subgroups_, anchored_;
    std::optional<Subgroup> central_;
    std::optional<ChainOrbitTable> brown_, s_anch_, s_above_, levi_star_, levi_full_, ab_closed_;
    std::optional<LeviEnumeration> levis_;
    std::optional<HomologyProfile> brown_h_, levi_h_;
    std::shared_ptr<const ClosureEngine> engine_;
    std::shared_ptr<const ClosureOracle> oracle_;
    std::map<std::uint64_t, std::vector<std::pair<Subgroup, BigInt>>> k_, l_;
    std::map<std::uint64_t, std::vector<std::pair<Subgroup, DefectProfile>>> defects_;
};

// Sum over chains of (-1)^{dim} f(G_sigma) for the anchored complex equals
// f(N_G(Z)) minus the same sum over the complex with the anchor removed.
CheckReport check_anchor_shift(Workbench& wb);
CheckReport check_brown(Workbench& wb);
CheckReport check_theorem_a(Workbench& wb);
CheckReport check_corollary_b(Workbench& wb);
CheckReport check_genericity(Workbench& a, Workbench& b);
CheckReport check_kr_webb(Workbench& wb);
CheckReport check_thevenaz(Workbench& wb);
CheckReport check_cancellation(Workbench& wb);
CheckReport check_weights(Workbench& wb);
CheckReport check_alternations(Workbench& wb);
CheckReport check_iota_delta(Workbench& wb);
CheckReport check_closures(Workbench& wb);
CheckReport check_characters(Workbench& wb);

const std::vector<std::string>& known_checks();

struct VerificationJob {
    std::string group;
    int ell = 0;
    std::optional<int> ell2;
    std::vector<std::string> checks;
};

struct VerificationReport {
    std::size_t job = 0;
    std::string group;
    int ell = 0;
    int e = 0;
    std::vector<HypothesisItem> hypotheses;
    std::vector<CheckReport> checks;
    std::optional<Error> error;  // failure before any check ran

    bool pass() const;
    bool resource_failure() const;
};

struct RunConfig {
    std::vector<VerificationJob> jobs;
    Limits limits;
    bool timings = false;  // wall times make reports non-reproducible
    unsigned threads = 1;
};

// Parses a JSON config; errors carry line and column.
RunConfig parse_config(const std::string& text);
Limits parse_limits(const std::string& text, Limits base = {});

VerificationReport run_job(const VerificationJob& job, std::size_t index, const Limits& limits);
std::vector<VerificationReport> run_jobs(const RunConfig& config);

Json to_json(const VerificationReport& r, bool timings);
Json to_json(const std::vector<VerificationReport>& rs, bool timings);
std::string to_csv(const std::vector<VerificationReport>& rs);

// 0 all pass, 1 an asserted check failed, 3 resource limit hit.
int exit_status(const std::vector<VerificationReport>& rs);

}  // namespace brownlevi
