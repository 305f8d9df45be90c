#include "qnls/cutoffs.hpp"
#include "qnls/normal_form.hpp"
#include "qnls/pseudo.hpp"
#include "qnls/stats.hpp"

#include <doctest.h>

using namespace qnls;

namespace {

double rel(const Field& a, const Field& b)
{
    double n = l2(b);
    return n > 0 ? l2(a - b) / n : l2(a);
}

ExperimentConfig shadow()
{
    ExperimentConfig e;
    e.L = 16;
    e.N = 16;
    e.width = 2;
    e.eps = 0.05;
    e.beta = 0;
    return e;
}

}

TEST_CASE("boundary and integrands: two-mode closed form")
{
    ExperimentConfig e = shadow();
    Grid g = e.grid();
    NormalForm nf(e);
    CHECK(l2(nf.boundary(zeros(g, Rep::Frequency), 3)) == 0.0);

    // f = mode a + mode b; the coefficient at a + b collects the orderings (eta, zeta) = (a, b), (b, a)
    int a1 = 3, a2 = 0, b1 = 2, b2 = 2;
    Field fa = single_mode(g, a1, a2, cd(0.4, 0.1)), fb = single_mode(g, b1, b2, cd(-0.2, 0.3));
    Field f = fa + fb;
    double s = 2.7, d = g.dk();
    cd P = pointwise(fa, fb).freq()(g.index(a1 + b1), g.index(a2 + b2));
    PhaseSpec pp = PhaseSpec::parse("++");
    CutoffFamily fam = build_cutoffs(pp, s);
    cd bnd = 0, h1 = 0, h2 = 0;
    for (int order = 0; order < 2; ++order) {
        int e1 = order ? b1 : a1, e2 = order ? b2 : a2;
        Point p{d * (a1 + b1), d * (a2 + b2), d * e1, d * e2, 0, 0};
        double phi = phase_eval(pp, p), q = q_value(e.ell, p[0], p[1], p[2], p[3]);
        ChiValues chi = fam.eval(p), dchi = fam.eval_dt(p);
        cd osc = std::exp(cd(0, s * phi));
        bnd += chi.T * q / cd(0, phi) * osc * P;
        h1 += (chi.R * q - dchi.T * q / cd(0, phi)) * osc * P;
        h2 += chi.S * q * osc * P;
    }
    CHECK(std::abs(bnd) > 1e-6);
    int ix = g.index(a1 + b1), iy = g.index(a2 + b2);
    CHECK(std::abs(nf.boundary(f, s).freq()(ix, iy) - bnd) <= 1e-10 * std::abs(bnd));
    Field R = rhs_quadrature(f, s, e);
    HIntegrands hi = nf.integrands(f, R, s);
    CHECK(std::abs(hi.h1.freq()(ix, iy) - h1) <= 1e-10 * (std::abs(h1) + std::abs(bnd)));
    CHECK(std::abs(hi.h2.freq()(ix, iy) - h2) <= 1e-10 * (std::abs(h2) + std::abs(bnd)));
}

TEST_CASE("h3: nested evaluation equals the direct trilinear sum")
{
    ExperimentConfig e = shadow();
    e.L = 12;
    e.N = 12;
    e.alpha = cd(0.6, -0.3);
    e.beta = cd(0.2, 0.9);
    NormalForm nf(e);
    Rng rng(2);
    for (int i = 0; i < 2; ++i) {
        Field f = project_dealiased(random_band_field(e.grid(), -1, rng));
        double s = 2 + 3 * i;
        CHECK(rel(nf.integrands(f, rhs_quadrature(f, s, e), s).h3, nf.h3_direct(f, s)) <= 1e-9);
    }
}

TEST_CASE("the integration-by-parts bookkeeping closes")
{
    ExperimentConfig e = shadow();
    e.alpha = cd(0.8, 0.3);
    e.beta = cd(-0.5, 0.6);
    e.eps = 0.2;
    NormalForm nf(e);
    ProfileRhs rhs(e);
    Field f = initial_profile(e);
    double s = 3.1, delta = 1e-3;
    auto bnd = [&](double d) { return nf.boundary(rk4_step(rhs, f, s, d), s + d); };
    // fourth-order central difference of the boundary term along the trajectory
    Field dg = (1 / (12 * delta)) * (8.0 * (bnd(delta) - bnd(-delta)) - (bnd(2 * delta) - bnd(-2 * delta)));
    Field R = rhs(f, s);
    HIntegrands hi = nf.integrands(f, R, s);
    CHECK(rel(dg + hi.h1 + hi.h2 + hi.h3, R) <= 1e-9);

    // h1 is localized: its integrand vanishes outside |xi| <= 2 / sqrt(s) (the chi^R and d_s chi^T supports)
    Field h1 = hi.h1.freq();
    const Grid& g = h1.grid;
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            if (std::hypot(g.freq(i), g.freq(j)) > 2 / std::sqrt(s)) CHECK(std::abs(h1(i, j)) == 0.0);
}

TEST_CASE("decomposition residual and norm report")
{
    ExperimentConfig e;
    e.T = 6;
    e.dt = 0.5;
    e.out_every = 2;
    NormalFormRun coarse = run_normal_form(e);
    e.dt = 0.25;
    NormalFormRun fine = run_normal_form(e);
    const NormalFormState& s0 = fine.states.front();
    CHECK(s0.t == 2.0);
    CHECK(l2(s0.g) == 0.0);
    CHECK(l2(s0.h()) == 0.0);
    CHECK(s0.residual() == 0.0);
    double rc = coarse.states.back().residual(), rf = fine.states.back().residual();
    CHECK(rf <= 1e-8 * l2(fine.states.back().f));
    CHECK(rc / rf >= 10);

    auto rows = norm_report(s0, e.eps);
    for (const auto& r : rows)
        if (r.piece != "g" || r.norm_name == "l2") CHECK(r.quotient == 0.0);
    CHECK(rows.size() == 8);

    ExperimentConfig free = e;
    free.alpha = free.beta = 0;
    NormalFormRun fr = run_normal_form(free);
    for (const auto& st : fr.states) {
        CHECK(l2(st.h()) == 0.0);
        CHECK(st.residual() <= 1e-15);
    }

    ExperimentConfig odd = e;
    odd.T = 2.75;
    CHECK_THROWS_AS(run_normal_form(odd), ConfigError);
}
