#include "selftest.hpp"

#include "qnls/config.hpp"
#include "qnls/normal_form.hpp"
#include "qnls/resonant_sets.hpp"
#include "qnls/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace qnls;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0, kExitInvariant = 1, kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Run {
    std::string sub;
    Config cfg;
    fs::path out;
    unsigned long long seed = 1;
    std::vector<std::string> outputs;

    std::string file(const std::string& name)
    {
        outputs.push_back(name);
        return (out / name).string();
    }
};

std::string phase_tag(const std::string& name)
{
    std::string t;
    for (char c : name) t += c == '+' ? 'p' : 'm';
    return t;
}

std::vector<PhaseSpec> selected_phases(const Config& cfg)
{
    const std::string& sel = cfg.str("resonance.phases");
    if (sel == "all") return PhaseSpec::all();
    std::vector<PhaseSpec> out;
    for (const auto& n : split(sel, ',')) {
        try {
            out.push_back(PhaseSpec::parse(n));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

int cmd_resonance(Run& r)
{
    SearchBox box = r.cfg.search_box();
    double tol = r.cfg.num("resonance.tol");
    int stride = r.cfg.integer("resonance.t_stride");
    std::vector<PhaseSpec> phases = selected_phases(r.cfg);
    std::ofstream sum(r.file("resonance_summary.csv"));
    sum << "phase,search,S_points,T_points,R_points\n";
    for (const auto& ph : phases) {
        SearchBox b = box;
        b.axes = ph.arity == 2 ? 2 : 1;
        ResonantClouds c = resonant_sets(ph, b, tol);
        write_clouds_csv(c, r.file("resonance_" + phase_tag(ph.name()) + ".csv"), stride);
        sum << ph.name() << ',' << (b.axes == 2 ? "full" : "collinear") << ',' << c.S.size() << ',' << c.T.size()
            << ',' << c.R.size() << '\n';
        std::cout << ph.name() << ": S=" << c.S.size() << " T=" << c.T.size() << " R=" << c.R.size() << '\n';
    }
    Rng rng(r.seed);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        Point p{};
        for (auto& x : p) x = 10 * nd(rng);
        auto res = check_null_identity(p);
        worst = std::max({worst, std::abs(res[0]), std::abs(res[1])});
    }
    std::ofstream id(r.file("resonance_identity.csv"));
    id << "check,samples,max_residual,threshold,pass\n" << std::setprecision(6);
    bool ok = worst <= 1e-12;
    id << "null_identity,10000," << worst << ",1e-12," << ok << '\n';
    std::cout << "null identity: max residual " << worst << (ok ? " (pass)" : " (FAIL)") << '\n';
    return ok ? kExitPass : kExitInvariant;
}

int cmd_selftest(Run& r)
{
    SelftestResult res = run_selftest(r.cfg, r.seed, r.file("selftest.csv"), std::cout);
    std::cout << res.passed << " passed, " << res.failed << " failed\n";
    return res.failed ? kExitInvariant : kExitPass;
}

int cmd_evolve(Run& r)
{
    ExperimentConfig e = r.cfg.experiment();
    bool snaps = r.cfg.integer("time.snapshots") != 0;
    Trajectory tr;
    try {
        tr = integrate(e);
    } catch (const InstabilityError& err) {
        write_diagnostics_csv(err.partial, r.file("diagnostics.csv"));
        std::cerr << err.what() << '\n';
        return kExitInvariant;
    }
    write_diagnostics_csv(tr.diag, r.file("diagnostics.csv"));
    if (snaps) {
        fs::create_directories(r.out / "snapshots");
        for (size_t k = 0; k < tr.f.size(); ++k) {
            std::ostringstream name;
            name << "snapshots/f_t" << std::fixed << std::setprecision(3) << tr.times[k] << ".qfld";
            save_snapshot(tr.f[k], r.file(name.str()));
        }
    }
    for (const auto& d : tr.diag)
        if (!std::isfinite(d.l2_f) || !std::isfinite(d.linf_u) || !std::isfinite(d.l2_x2f)) return kExitInvariant;
    std::cout << "evolved to t=" << tr.times.back() << " (" << tr.diag.size() << " outputs)\n";
    return kExitPass;
}

int cmd_normalform(Run& r)
{
    ExperimentConfig e = r.cfg.experiment();
    NormalFormRun run = run_normal_form(e, r.cfg.cutoffs());
    write_norm_report_csv(run.report, r.file("norm_report.csv"));
    std::ofstream res(r.file("residual.csv"));
    res << "t,residual\n" << std::setprecision(17);
    double worst = 0;
    for (const auto& st : run.states) {
        res << st.t << ',' << st.residual() << '\n';
        worst = std::max(worst, st.residual());
    }
    std::cout << "normal form to t=" << run.states.back().t << ", max residual " << worst << '\n';
    return std::isfinite(worst) ? kExitPass : kExitInvariant;
}

int cmd_report_data(Run& r)
{
    int rc = cmd_evolve(r);
    if (rc != kExitPass) return rc;
    rc = cmd_normalform(r);
    if (rc != kExitPass) return rc;
    Config c = r.cfg;
    c.set("resonance.phases", "++,-+");
    Run sub{r.sub, c, r.out, r.seed, {}};
    rc = cmd_resonance(sub);
    r.outputs.insert(r.outputs.end(), sub.outputs.begin(), sub.outputs.end());
    std::ofstream idx(r.file("report_index.csv"));
    idx << "kind,path\n";
    idx << "decay,diagnostics.csv\nenvelope,norm_report.csv\ncauchy,diagnostics.csv\n";
    idx << "resonant-scatter,resonance_pp.csv\nresonant-scatter,resonance_mp.csv\n";
    return rc;
}

void write_manifest(const Run& r, double wall, int rc)
{
    nlohmann::json j;
    std::ostringstream h;
    h << std::hex << std::setw(16) << std::setfill('0') << r.cfg.hash();
    j["subcommand"] = r.sub;
    j["config_hash"] = h.str();
    j["code_version"] = QNLS_VERSION;
    j["seed"] = r.seed;
    j["outputs"] = r.outputs;
    j["wall_clock_s"] = wall;
    j["exit_code"] = rc;
    j["config"] = r.cfg.values();
    std::ofstream os(r.out / "manifest.json");
    os << j.dump(2) << '\n';
}

int dispatch(Run& r)
{
    fs::create_directories(r.out);
    auto t0 = std::chrono::steady_clock::now();
    int rc;
    if (r.sub == "resonance")
        rc = cmd_resonance(r);
    else if (r.sub == "selftest")
        rc = cmd_selftest(r);
    else if (r.sub == "evolve")
        rc = cmd_evolve(r);
    else if (r.sub == "normalform")
        rc = cmd_normalform(r);
    else
        rc = cmd_report_data(r);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(r, wall, rc);
    return rc;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Space-time resonance toolkit for the quadratic Schroedinger equation"};
    app.require_subcommand(1, 1);
    std::string config_path, out_dir = "qnls_out", sweep;
    unsigned long long seed = 1;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--sweep", sweep, "KEY=v1,v2,... (use ';' to separate list-valued entries)");
    app.add_option("--set", sets, "KEY=VALUE override (repeatable)");
    for (const char* s : {"resonance", "selftest", "evolve", "normalform", "report-data"})
        app.add_subcommand(s, "")->fallthrough();
    app.get_subcommand("resonance")->description("resonant-set clouds for the eight phases and the null identity");
    app.get_subcommand("selftest")->description("invariant battery at desk sizes");
    app.get_subcommand("evolve")->description("integrate the profile equation; diagnostics CSV");
    app.get_subcommand("normalform")->description("normal-form decomposition; norm-report CSV");
    app.get_subcommand("report-data")->description("all CSVs consumed by the report layer");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }
    std::string sub = app.get_subcommands().front()->get_name();
    try {
        Config cfg;
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) throw UsageError("--set expects KEY=VALUE");
            cfg.set(s.substr(0, eq), s.substr(eq + 1));
        }
        if (sweep.empty()) {
            Run r{sub, cfg, out_dir, seed, {}};
            return dispatch(r);
        }
        auto eq = sweep.find('=');
        if (eq == std::string::npos) throw UsageError("--sweep expects KEY=LIST");
        std::string key = sweep.substr(0, eq), list = sweep.substr(eq + 1);
        auto values = split(list, list.find(';') != std::string::npos ? ';' : ',');
        int worst = kExitPass;
        for (const auto& v : values) {
            Config c = cfg;
            c.set(key, v);
            Run r{sub, c, fs::path(out_dir) / (key + "=" + v), seed, {}};
            std::cout << "== " << key << "=" << v << '\n';
            worst = std::max(worst, dispatch(r));
        }
        return worst;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
}
