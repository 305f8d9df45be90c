#include "qnls/lp.hpp"

#include "qnls/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnls {

double lp_big(double r) { return 1.0 - smoothstep((r - 1.5) / (8.0 / 3.0 - 1.5)); }
double lp_theta(double r) { return lp_big(r) - lp_big(2 * r); }
double lp_low(double r) { return r == 0 ? 1.0 : lp_big(2 * r); }

DyadicRange dyadic_range(const Grid& g)
{
    int jmin = static_cast<int>(std::floor(std::log2(3 * g.dk() / 8))) + 1;
    double rmax = g.dk() * std::sqrt(2.0) * (g.N / 2);
    int jmax = static_cast<int>(std::ceil(std::log2(rmax / 1.5)));
    return {jmin, jmax};
}

Field project_band(const Field& f, int j)
{
    DyadicRange dr = dyadic_range(f.grid);
    if (j < dr.jmin || j > dr.jmax) {
        warn("project_band: j=" + std::to_string(j) + " outside resolvable range");
        return zeros(f.grid, Rep::Frequency);
    }
    double s = std::ldexp(1.0, -j);
    return apply_multiplier(f, [s](double a, double b) { return cd(lp_theta(std::hypot(a, b) * s)); });
}

Field project_low(const Field& f, int j)
{
    double s = std::ldexp(1.0, -j);
    return apply_multiplier(f, [s](double a, double b) { return cd(lp_low(std::hypot(a, b) * s)); });
}

BandSplit split_bands(const Field& f)
{
    DyadicRange dr = dyadic_range(f.grid);
    BandSplit out{dr.jmin, project_low(f, dr.jmin), {}};
    for (int j = dr.jmin; j <= dr.jmax; ++j) out.bands.push_back(project_band(f, j));
    return out;
}

Field square_function(const Field& f)
{
    BandSplit bs = split_bands(f);
    Field low = bs.low.phys();
    std::vector<double> acc(low.v.size());
    for (size_t i = 0; i < acc.size(); ++i) acc[i] = std::norm(low.v[i]);
    for (const auto& b : bs.bands) {
        Field p = b.phys();
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(p.v[i]);
    }
    Field out(f.grid, Rep::Physical);
    for (size_t i = 0; i < acc.size(); ++i) out.v[i] = std::sqrt(acc[i]);
    return out;
}

Field maximal_function(const Field& f)
{
    DyadicRange dr = dyadic_range(f.grid);
    Field out(f.grid, Rep::Physical);
    for (int j = dr.jmin; j <= dr.jmax + 1; ++j) {
        Field p = project_low(f, j).phys();
        for (size_t i = 0; i < p.v.size(); ++i)
            out.v[i] = std::max(out.v[i].real(), std::abs(p.v[i]));
    }
    return out;
}

double square_frame_bound(const Grid& g)
{
    DyadicRange dr = dyadic_range(g);
    double mn = 1e300;
    for (int i = 0; i < g.N; ++i)
        for (int k = 0; k < g.N; ++k) {
            double r = std::hypot(g.freq(i), g.freq(k));
            if (r == 0) continue;
            double s = std::pow(lp_low(r * std::ldexp(1.0, -dr.jmin)), 2);
            for (int j = dr.jmin; j <= dr.jmax; ++j) s += std::pow(lp_theta(r * std::ldexp(1.0, -j)), 2);
            mn = std::min(mn, s);
        }
    return mn;
}

double bernstein_ratio(const Field& f, int j, double p, double q)
{
    Field pj = project_band(f, j);
    double nq = lp(pj, q);
    if (nq == 0) throw std::domain_error("bernstein_ratio: projection vanishes");
    if (p == q) return 1.0;
    double ip = std::isinf(p) ? 0.0 : 1.0 / p, iq = std::isinf(q) ? 0.0 : 1.0 / q;
    return lp(pj, p) / (std::pow(2.0, 2 * j * (iq - ip)) * nq);
}

double lambda_Z(double r)
{
    if (r <= 1) return 1.0;
    if (r >= 2) return 1.0 / r;
    return std::exp(-smoothstep(r - 1) * std::log(r));
}

Field lambda_op(const Field& f, double alpha, double t)
{
    if (alpha == 0) return f.freq();
    double st = std::sqrt(t);
    return apply_multiplier(f, [=](double a, double b) {
        return cd(std::pow(t, alpha / 2) * std::pow(lambda_Z(st * std::hypot(a, b)), alpha));
    });
}

std::pair<double, double> check_gagnir(const Field& f, double t, const NormOptions& opt)
{
    double frac = boundary_mass_fraction(f);
    if (frac > opt.boundary_threshold)
        warn("check_gagnir: boundary contamination, mass fraction " + std::to_string(frac));
    Field a = propagate(times_x(f, 0), -t).phys();
    Field b = propagate(times_x(f, 1), -t).phys();
    double s = 0;
    for (size_t i = 0; i < a.v.size(); ++i) s += std::pow(std::norm(a.v[i]) + std::norm(b.v[i]), 2);
    double l4 = std::pow(s * f.grid.cell_area(), 0.25);
    double rhs = linf(propagate(f, -t)) * l2(propagate(times_x2(f), -t));
    return {l4 * l4, rhs};
}

}
