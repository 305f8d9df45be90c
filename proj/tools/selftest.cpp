#include "selftest.hpp"

#include "qnls/cutoffs.hpp"
#include "qnls/lp.hpp"
#include "qnls/normal_form.hpp"
#include "qnls/pseudo.hpp"
#include "qnls/stats.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <vector>

using namespace qnls;

namespace {

struct Check {
    std::string id;
    double tol;
    std::function<double(Rng&)> measure;  // returns the error; pass when error <= tol * scale
};

double rel(const Field& a, const Field& b)
{
    double n = l2(b);
    return n > 0 ? l2(a - b) / n : l2(a);
}

std::vector<Check> battery(const Config& cfg)
{
    CutoffParams cut = cfg.cutoffs();
    std::vector<Check> c;
    Grid g16 = make_grid(16, 16), g12 = make_grid(12, 12);

    c.push_back({"spectral_core/plancherel", 1e-12, [g16](Rng& r) {
                     Field f = random_band_field(g16, -1, r).phys();
                     return std::abs(l2(f) - l2(f.freq())) / l2(f);
                 }});
    c.push_back({"spectral_core/round_trip", 1e-12, [g16](Rng& r) {
                     Field f = random_band_field(g16, -1, r).phys();
                     return rel(f.freq().phys(), f);
                 }});
    c.push_back({"spectral_core/propagator_group", 1e-12, [g16](Rng& r) {
                     Field f = random_band_field(g16, -1, r);
                     return rel(propagate(propagate(f, 0.3), 1.1), propagate(f, 1.4));
                 }});
    c.push_back({"lp_toolkit/reconstruction", 1e-10, [](Rng& r) {
                     Field f = random_band_field(make_grid(64, 64), -1, r);
                     BandSplit b = split_bands(f);
                     Field s = b.low;
                     for (const auto& x : b.bands) s += x;
                     return rel(s, f);
                 }});
    c.push_back({"symbol_algebra/q_linear_region", 1e-15, [](Rng&) {
                     LinearFunctional l;
                     l.c[0] = l.c[2] = 1;
                     return std::abs(q_value(l, 0.3, 0, 0.2, 0) - 0.5);
                 }});
    c.push_back({"resonance/null_identity", 1e-12, [](Rng& r) {
                     std::normal_distribution<double> nd;
                     double m = 0;
                     for (int i = 0; i < 1000; ++i) {
                         Point p{};
                         for (auto& x : p) x = 10 * nd(r);
                         auto res = check_null_identity(p);
                         m = std::max({m, std::abs(res[0]), std::abs(res[1])});
                     }
                     return m;
                 }});
    for (const auto& ph : PhaseSpec::all()) {
        c.push_back({"resonance/build_cutoffs[" + ph.name() + "]", 1e-12, [ph, cut](Rng& r) {
                         CutoffFamily fam = build_cutoffs(ph, 1.0, cut);
                         std::normal_distribution<double> nd;
                         double m = 0;
                         for (int i = 0; i < 2000; ++i) {
                             Point p{};
                             for (int d = 0; d < 2 * ph.arity; ++d) p[d] = 3 * nd(r);
                             m = std::max(m, std::abs(fam.eval(p).sum() - 1));
                         }
                         return m;
                     }});
    }
    c.push_back({"pseudo_product/unit_symbol", 1e-12, [g16](Rng& r) {
                     Field f = random_band_field(g16, -1, r), h = random_band_field(g16, -1, r);
                     return rel(apply_bilinear(constant_symbol(1), f, h), pointwise(f, h));
                 }});
    c.push_back({"pseudo_product/separable_vs_direct", 1e-10, [g16](Rng& r) {
                     Symbol q = build_q();
                     Field f = random_band_field(g16, -1, r), h = random_band_field(g16, -1, r);
                     Symbol s = separable_approx(q, 1 << 20, g16).symbol;
                     return rel(apply_bilinear(s, f, h, Method::Separable), apply_bilinear(q, f, h));
                 }});
    c.push_back({"pseudo_product/factored_vs_direct", 1e-10, [g16](Rng& r) {
                     Symbol q = build_q();
                     Field f = random_band_field(g16, 3, r), h = random_band_field(g16, 3, r);
                     PhaseSpec ph = PhaseSpec::parse("++");
                     return rel(apply_bilinear_phase(q, ph, 1.3, f, h, Method::FactoredPhase),
                                apply_bilinear_phase(q, ph, 1.3, f, h, Method::Direct));
                 }});
    c.push_back({"pseudo_product/flag_nested_vs_direct", 1e-9, [g12](Rng& r) {
                     FlagSymbol m{constant_symbol(1, 3), true, build_q(), build_q()};
                     Field a = random_band_field(g12, -1, r), b = random_band_field(g12, -1, r),
                           d = random_band_field(g12, -1, r);
                     return rel(apply_flag(m, a, b, d, FlagPath::Nested), apply_flag(m, a, b, d, FlagPath::Direct));
                 }});
    c.push_back({"pseudo_product/paraproduct_reconstruction", 1e-12, [](Rng& r) {
                     Grid g = make_grid(32, 32);
                     Field f = random_band_field(g, -1, r), h = random_band_field(g, -1, r);
                     ParaPieces p = paraproduct_pieces(f, h);
                     return rel(p.high_low + p.low_high + p.high_high, pointwise(f, h));
                 }});
    c.push_back({"evolution/free_profile_constancy", 1e-11, [](Rng&) {
                     ExperimentConfig e;
                     e.alpha = e.beta = 0;
                     e.T = 4;
                     e.dt = 0.25;
                     Trajectory tr = integrate(e);
                     return rel(tr.f.back(), tr.f.front());
                 }});
    c.push_back({"evolution/rhs_oracle", 1e-9, [](Rng& r) {
                     ExperimentConfig e;
                     e.L = 16;
                     e.N = 16;
                     e.alpha = cd(0.7, 0.2);
                     e.beta = cd(-0.4, 1.1);
                     Field f = project_dealiased(random_band_field(e.grid(), -1, r));
                     return rel(rhs_profile(f, 2.7, e), rhs_quadrature(f, 2.7, e));
                 }});
    c.push_back({"normal_form/h3_nested_vs_direct", 1e-9, [cut](Rng& r) {
                     ExperimentConfig e;
                     e.L = 12;
                     e.N = 12;
                     e.alpha = cd(0.6, -0.3);
                     e.beta = cd(0.2, 0.9);
                     NormalForm nf(e, cut);
                     Field f = project_dealiased(random_band_field(e.grid(), -1, r));
                     double s = 2.5;
                     Field R = rhs_quadrature(f, s, e);
                     return rel(nf.integrands(f, R, s).h3, nf.h3_direct(f, s));
                 }});
    c.push_back({"normal_form/decomposition_residual", 1e-9, [cut](Rng&) {
                     ExperimentConfig e;
                     e.T = 4;
                     e.dt = 0.125;
                     e.out_every = 2;
                     NormalFormRun run = run_normal_form(e, cut);
                     return run.states.back().residual() / l2(run.states.back().f);
                 }});
    return c;
}

}

SelftestResult run_selftest(const Config& cfg, unsigned long long seed, const std::string& csv_path,
                            std::ostream& log)
{
    double scale = cfg.num("selftest.tol_scale");
    SelftestResult res;
    std::ofstream csv(csv_path);
    csv << "id,error,tolerance,pass\n" << std::setprecision(6);
    std::vector<Check> checks;
    try {
        checks = battery(cfg);
    } catch (const std::exception& e) {
        log << "FAIL config: " << e.what() << '\n';
        ++res.failed;
        return res;
    }
    for (const auto& ch : checks) {
        Rng rng(seed);
        double err;
        std::string note;
        try {
            err = ch.measure(rng);
        } catch (const std::exception& e) {
            err = INFINITY;
            note = e.what();
        }
        double tol = ch.tol * scale;
        bool ok = err <= tol;
        (ok ? res.passed : res.failed)++;
        log << (ok ? "PASS " : "FAIL ") << ch.id << "  error=" << err << " tol=" << tol;
        if (!note.empty()) log << "  (" << note << ")";
        log << '\n';
        csv << ch.id << ',' << err << ',' << tol << ',' << (ok ? 1 : 0) << '\n';
    }
    return res;
}
