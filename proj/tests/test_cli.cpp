#include "qnls/evolution.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "qnls_cli_test";

int run(const std::string& args, const std::string& log = "cli.log")
{
    fs::create_directories(kWork);
    std::string cmd = std::string(QNLS_CLI) + " " + args + " > " + (kWork / log).string() + " 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string first_line(const fs::path& p)
{
    std::ifstream is(p);
    std::string s;
    std::getline(is, s);
    return s;
}

std::string out(const std::string& name) { return (kWork / name).string(); }

const std::string kSmallEvolve = "--set time.T=4 --set time.dt=0.25 --set time.out_every=0.5";

}

TEST_CASE("usage errors")
{
    CHECK(run("") == 2);
    CHECK(run("bogus") == 2);
    CHECK(run("evolve --seed notanumber") == 2);
    CHECK(run("evolve --set no.such.key=1 --out " + out("u1")) == 2);
    CHECK(run("resonance --set resonance.phases=bogus --out " + out("u2")) == 2);
    CHECK(run("evolve --sweep data.eps --out " + out("u3")) == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("resonance")
{
    REQUIRE(run("resonance --set resonance.R=8 --set resonance.n=16 --out " + out("res")) == 0);
    fs::path d = kWork / "res";
    CHECK(first_line(d / "resonance_pp.csv") == "xi1,xi2,eta1,eta2,sigma1,sigma2,abs_phi,abs_grad,class");
    CHECK(fs::exists(d / "resonance_summary.csv"));
    CHECK(fs::exists(d / "resonance_identity.csv"));
    std::ifstream is(d / "resonance_pp.csv");
    std::string line;
    int r_rows = 0;
    while (std::getline(is, line))
        if (line.size() > 2 && line.substr(line.size() - 2) == ",R") {
            ++r_rows;
            CHECK(line.rfind("0,0,0,0,0,0,", 0) == 0);
        }
    CHECK(r_rows == 1);
}

TEST_CASE("selftest")
{
    CHECK(run("selftest --out " + out("st"), "st.log") == 0);
    CHECK(first_line(kWork / "st" / "selftest.csv") == "id,error,tolerance,pass");
    CHECK(run("selftest --set selftest.tol_scale=0 --out " + out("st0")) == 1);
    CHECK(run("selftest --set cutoff.deltaT=0.9 --set cutoff.deltaS=0.9 --out " + out("stc"), "stc.log") == 1);
    CHECK(slurp(kWork / "stc.log").find("FAIL resonance/build_cutoffs") != std::string::npos);
}

TEST_CASE("evolve: schema, zero data, determinism, manifest")
{
    REQUIRE(run("evolve " + kSmallEvolve + " --out " + out("ev1")) == 0);
    REQUIRE(run("evolve " + kSmallEvolve + " --out " + out("ev2")) == 0);
    fs::path a = kWork / "ev1" / "diagnostics.csv", b = kWork / "ev2" / "diagnostics.csv";
    CHECK(first_line(a) == qnls::kDiagnosticsHeader);
    CHECK(slurp(a) == slurp(b));
    auto rows = qnls::read_diagnostics_csv(a.string());
    REQUIRE(rows.size() == 5);
    for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].t - rows[i - 1].t == doctest::Approx(0.5));

    auto m = nlohmann::json::parse(slurp(kWork / "ev1" / "manifest.json"));
    for (const char* k : {"subcommand", "config_hash", "code_version", "seed", "outputs", "wall_clock_s", "exit_code"})
        CHECK(m.contains(k));
    auto m2 = nlohmann::json::parse(slurp(kWork / "ev2" / "manifest.json"));
    CHECK(m["config_hash"] == m2["config_hash"]);

    REQUIRE(run("evolve " + kSmallEvolve + " --set data.eps=0 --out " + out("ev0")) == 0);
    for (const auto& r : qnls::read_diagnostics_csv((kWork / "ev0" / "diagnostics.csv").string())) {
        CHECK(r.l2_f == 0.0);
        CHECK(r.linf_u == 0.0);
        CHECK(r.cauchy_inc == 0.0);
    }

    std::ofstream cfg(kWork / "cfg.txt");
    cfg << "# comment\ntime.T = 3\ntime.dt = 0.25\n";
    cfg.close();
    REQUIRE(run("evolve --config " + out("cfg.txt") + " --out " + out("evc")) == 0);
    CHECK(qnls::read_diagnostics_csv((kWork / "evc" / "diagnostics.csv").string()).back().t == 3.0);
}

TEST_CASE("sweep and normal form")
{
    REQUIRE(run("evolve " + kSmallEvolve + " --sweep data.eps=0.005,0.01 --out " + out("sw")) == 0);
    CHECK(fs::exists(kWork / "sw" / "data.eps=0.005" / "diagnostics.csv"));
    CHECK(fs::exists(kWork / "sw" / "data.eps=0.01" / "diagnostics.csv"));

    REQUIRE(run("normalform --set time.T=4 --set time.dt=0.25 --out " + out("nf")) == 0);
    CHECK(first_line(kWork / "nf" / "norm_report.csv") == "t,piece,norm_name,value,envelope,quotient");
    CHECK(fs::exists(kWork / "nf" / "residual.csv"));
}
