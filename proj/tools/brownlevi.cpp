#include "brownlevi/harness.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace brownlevi;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::vector<VerificationReport>& rs, const std::string& format, const std::string& out, bool timings) {
    const std::string body = format == "csv" ? to_csv(rs) : to_json(rs, timings).dump(2) + "\n";
    if (out.empty()) {
        std::cout << body;
        return;
    }
    std::filesystem::create_directories(out);
    const auto path = std::filesystem::path(out) / (format == "csv" ? "report.csv" : "report.json");
    std::ofstream f(path);
    f << body;
    std::cerr << "wrote " << path.string() << "\n";
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int list_levis(const std::string& group, int e, const Limits& limits) {
    const auto spec = GroupSpec::parse(group);
    if (!spec.is_gl()) throw Error(ErrorKind::Config, "list levis needs a general linear group");
    auto ctx = GLContext::make(spec.n, spec.q, limits);
    const auto lev = enumerate_e_split_levis(ctx, e, limits);
    Json classes = Json::array();
    for (auto i : lev.reps) {
        const auto& entry = lev.levis[i];
        const int id = static_cast<int>(i);
        std::size_t size = 0;
        for (int j = 0; j < lev.poset->size(); ++j)
            if (lev.poset->orbit_of(j) == lev.poset->orbit_of(id)) ++size;
        classes.push_back({{"type", entry.type},
                           {"order", entry.subgroup.order()},
                           {"class_size", size},
                           {"proper", entry.proper},
                           {"order_polynomial", levi_order_polynomial(entry.datum).to_string()}});
    }
    Json j{{"group", spec.to_string()}, {"e", e}, {"total", lev.levis.size()}, {"count_by_type", lev.count_by_type},
           {"classes", classes}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int sweep_closures(const std::string& group, int ell, const Limits& limits) {
    const auto spec = GroupSpec::parse(group);
    if (!spec.is_gl()) throw Error(ErrorKind::Config, "sweep closures needs a general linear group");
    Workbench wb(spec, ell, limits);
    const auto& P = wb.subgroups();
    const auto eng = wb.engine();
    std::size_t closed = 0, weak = 0, neither = 0, abelian = 0;
    Json reps = Json::array();
    for (int i = 0; i < P->size(); ++i) {
        const Subgroup& A = P->member(i);
        if (!A.is_abelian()) continue;
        ++abelian;
        const auto r = eng->stabilize(A);
        const char* cls = r.e_closed ? "e-closed" : r.weakly_e_closed ? "weakly-e-closed" : "neither";
        if (r.e_closed) ++closed;
        else if (r.weakly_e_closed) ++weak;
        else ++neither;
        if (P->orbit_reps()[static_cast<std::size_t>(P->orbit_of(i))] != i) continue;
        reps.push_back({{"subgroup", A.describe()},
                        {"order", A.order()},
                        {"class", cls},
                        {"gamma_order", r.gamma.order()},
                        {"omega_order", r.omega.order()},
                        {"t", r.t},
                        {"r", r.r},
                        {"closure_order", r.closure.order()}});
    }
    Json hyp = Json::array();
    for (const auto& h : wb.hypotheses()) hyp.push_back({{"name", h.name}, {"pass", h.pass}});
    Json j{{"group", spec.to_string()},
           {"ell", ell},
           {"e", wb.e()},
           {"hypotheses", hyp},
           {"abelian", abelian},
           {"e_closed", closed},
           {"weakly_e_closed_only", weak},
           {"neither", neither},
           {"classes", reps}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brown complexes, e-split Levi subgroups and alternating sums"};
    app.require_subcommand(1);

    std::string group, checks, out, format = "json", limits_file, config;
    int ell = 0, ell2 = 0, e = 0;
    unsigned threads = 1;
    bool timings = false;

    auto* verify = app.add_subcommand("verify", "Run checks on one (group, ell) instance");
    verify->add_option("--group", group, "gl:n=<n>,q=<q> | perm:sym=<n> | cyc:n=<n>")->required();
    verify->add_option("--ell", ell, "prime")->required();
    verify->add_option("--checks", checks, "comma-separated check names");
    verify->add_option("--ell2", ell2, "second prime for genericity");
    verify->add_option("--out", out, "output directory");
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--limits", limits_file, "JSON file of resource limits");
    verify->add_flag("--timings", timings, "include wall times");

    auto* list = app.add_subcommand("list", "List objects");
    auto* levis = list->add_subcommand("levis", "e-split Levi subgroups");
    levis->add_option("--group", group)->required();
    levis->add_option("--e", e)->required()->check(CLI::PositiveNumber);
    levis->add_option("--limits", limits_file);
    list->require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Sweep subgroup families");
    auto* closures = sweep->add_subcommand("closures", "e-closed / weakly e-closed classification");
    closures->add_option("--group", group)->required();
    closures->add_option("--ell", ell)->required();
    closures->add_option("--limits", limits_file);
    sweep->require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a job config");
    run->add_option("--config", config)->required();
    run->add_option("--out", out);
    run->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--threads", threads);
    run->add_flag("--timings", timings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        Limits limits;
        if (!limits_file.empty()) limits = parse_limits(slurp(limits_file));
        if (*verify) {
            VerificationJob job;
            job.group = group;
            job.ell = ell;
            if (ell2) job.ell2 = ell2;
            job.checks = split_list(checks);
            RunConfig cfg;
            cfg.limits = limits;
            cfg.timings = timings;
            // Validate through the config path so errors map to status 2.
            Json j{{"jobs", Json::array()}};
            Json jj{{"group", job.group}, {"ell", job.ell}, {"checks", job.checks}};
            if (job.ell2) jj["ell2"] = *job.ell2;
            j["jobs"].push_back(jj);
            cfg.jobs = parse_config(j.dump()).jobs;
            const auto rs = run_jobs(cfg);
            emit(rs, format, out, timings);
            return exit_status(rs);
        }
        if (*levis) return list_levis(group, e, limits);
        if (*closures) return sweep_closures(group, ell, limits);
        if (*run) {
            RunConfig cfg = parse_config(slurp(config));
            if (run->count("--threads")) cfg.threads = std::max(1u, threads);
            cfg.timings = cfg.timings || timings;
            const auto rs = run_jobs(cfg);
            emit(rs, format, out, cfg.timings);
            return exit_status(rs);
        }
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        if (err.kind() == ErrorKind::Parse || err.kind() == ErrorKind::Config || err.kind() == ErrorKind::InvalidPrime)
            return 2;
        return err.is_resource_limit() ? 3 : 1;
    }
    return 0;
}
