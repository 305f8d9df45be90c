#include "qnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qnls {

const char* const kDiagnosticsHeader = "t,l2_f,l2_xf,l2_x2f,linf_u,t_linf_u,cauchy_inc";

void ExperimentConfig::validate() const
{
    Grid g = make_grid(L, N);
    if (t0 != 2) throw ConfigError("t0 must be 2");
    if (!(eps >= 0)) throw ConfigError("eps must be nonnegative");
    if (!(width > 0)) throw ConfigError("width must be positive");
    if (!(dt > 0)) throw ConfigError("dt must be positive");
    if (!(T >= t0)) throw ConfigError("T must be at least t0");
    if (!(out_every > 0) && out_times.empty()) throw ConfigError("out_every must be positive");
    double kmax = dealias_K(N) * g.dk();
    if (dt * 2 * kmax * kmax > stability_ceiling)
        throw ConfigError("dt * max|xi|^2 = " + std::to_string(dt * 2 * kmax * kmax) + " exceeds the ceiling " +
                          std::to_string(stability_ceiling));
}

std::vector<double> ExperimentConfig::output_times() const
{
    std::vector<double> out;
    if (!out_times.empty()) {
        out.push_back(t0);
        for (double t : out_times)
            if (t > t0 && t <= T) out.push_back(t);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.back() < T) out.push_back(T);
        return out;
    }
    int n = static_cast<int>(std::floor((T - t0) / out_every + 1e-9));
    for (int k = 0; k <= n; ++k) out.push_back(t0 + k * out_every);
    if (T - out.back() > 1e-9) out.push_back(T);
    return out;
}

Field initial_profile(const ExperimentConfig& cfg)
{
    return project_dealiased(gaussian(cfg.grid(), cfg.eps, cfg.width, cfg.x0, cfg.y0, cfg.kx0, cfg.ky0));
}

ProfileRhs::ProfileRhs(const ExperimentConfig& cfg)
    : cfg_(cfg), q_(std::make_shared<QOperator>(cfg.grid(), cfg.ell, cfg.q_method, cfg.q_tol))
{
}

Field ProfileRhs::operator()(const Field& f, double s) const
{
    Field u = propagate(project_dealiased(f), -s);
    Field out = zeros(u.grid, Rep::Frequency);
    Field ub;
    bool have_ub = false;
    auto bar = [&]() -> const Field& {
        if (!have_ub) {
            ub = u.conj();
            have_ub = true;
        }
        return ub;
    };
    if (cfg_.alpha != 0.0) out += cfg_.alpha * q_->apply(u, u);
    if (cfg_.beta != 0.0) out += cfg_.beta * q_->apply(bar(), bar());
    if (cfg_.mode == NonlinMode::Contrast && cfg_.gamma != 0.0) out += cfg_.gamma * q_->apply(u, bar());
    return propagate(out, s);
}

Field rhs_profile(const Field& f, double s, const ExperimentConfig& cfg) { return ProfileRhs(cfg)(f, s); }

Field rhs_quadrature(const Field& f, double s, const ExperimentConfig& cfg)
{
    Grid g = cfg.grid();
    PairList pl = make_pairs(g);
    Field F = project_dealiased(f);
    Field Fb = F.conj();
    Field out(g, Rep::Frequency);
    bool contrast = cfg.mode == NonlinMode::Contrast;
    for (size_t i = 0; i < pl.size(); ++i) {
        Point p = pl.point(i);
        double x2 = p[0] * p[0] + p[1] * p[1], e2 = p[2] * p[2] + p[3] * p[3];
        double z2 = (p[0] - p[2]) * (p[0] - p[2]) + (p[1] - p[3]) * (p[1] - p[3]);
        double q = q_value(cfg.ell, p[0], p[1], p[2], p[3]);
        int e = pl.eta[i], z = pl.zeta[i];
        cd v = cfg.alpha * std::polar(1.0, s * (-x2 + e2 + z2)) * F.v[e] * F.v[z] +
               cfg.beta * std::polar(1.0, s * (-x2 - e2 - z2)) * Fb.v[e] * Fb.v[z];
        if (contrast) v += cfg.gamma * std::polar(1.0, s * (-x2 + e2 - z2)) * F.v[e] * Fb.v[z];
        out.v[pl.xi[i]] += q * v;
    }
    out *= 1.0 / g.N;
    return out;
}

Field rk4_step(const ProfileRhs& rhs, const Field& f, double s, double dt, Field* k1_out)
{
    Field k1 = rhs(f, s);
    Field k2 = rhs(f + (dt / 2) * k1, s + dt / 2);
    Field k3 = rhs(f + (dt / 2) * k2, s + dt / 2);
    Field k4 = rhs(f + dt * k3, s + dt);
    Field out = f.freq();
    for (size_t i = 0; i < out.v.size(); ++i)
        out.v[i] += dt / 6 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    if (k1_out) *k1_out = std::move(k1);
    return out;
}

DiagRow diagnose(const Field& f, double t, const Field* prev)
{
    DiagRow r{};
    r.t = t;
    r.l2_f = l2(f);
    r.l2_xf = weighted_norm(f, 1, 2);
    r.l2_x2f = weighted_norm(f, 2, 2);
    r.linf_u = linf(propagate(f, -t));
    r.t_linf_u = t * r.linf_u;
    r.cauchy_inc = prev ? l2(f - *prev) : 0.0;
    return r;
}

Trajectory integrate(const ExperimentConfig& cfg)
{
    cfg.validate();
    ProfileRhs rhs(cfg);
    std::vector<double> outs = cfg.output_times();
    Trajectory tr;
    Field f = initial_profile(cfg);
    double n0 = l2(f);
    tr.times.push_back(cfg.t0);
    tr.diag.push_back(diagnose(f, cfg.t0, nullptr));
    Field last = f;
    if (cfg.keep_trajectory) tr.f.push_back(f);
    double s = cfg.t0;
    for (size_t k = 1; k < outs.size(); ++k) {
        double target = outs[k];
        while (s < target - 1e-12) {
            double h = std::min(cfg.dt, target - s);
            if (target - (s + h) < 1e-9 * cfg.dt) h = target - s;
            f = rk4_step(rhs, f, s, h);
            s = std::abs(s + h - target) < 1e-9 ? target : s + h;
            double n = l2(f);
            if (!std::isfinite(n) || (n0 > 0 && n > cfg.growth_abort * n0)) {
                std::ostringstream os;
                os << "instability at t=" << s << ": ||f||_2 = " << n << " vs initial " << n0;
                throw InstabilityError(os.str(), tr.diag);
            }
        }
        tr.times.push_back(target);
        tr.diag.push_back(diagnose(f, target, &last));
        last = f;
        if (cfg.keep_trajectory) tr.f.push_back(f);
    }
    if (!cfg.keep_trajectory) tr.f.push_back(f);
    return tr;
}

std::vector<double> scattering_indicator(const Trajectory& tr)
{
    std::vector<double> out;
    for (size_t k = 1; k < tr.diag.size(); ++k) out.push_back(tr.diag[k].cauchy_inc);
    return out;
}

std::vector<double> decay_indicator(const Trajectory& tr)
{
    std::vector<double> out;
    for (const auto& r : tr.diag) out.push_back(r.t_linf_u);
    return out;
}

std::vector<double> increments_at(const Trajectory& tr, const std::vector<double>& times)
{
    if (tr.f.size() != tr.times.size()) throw std::invalid_argument("increments_at: trajectory not stored");
    auto find = [&](double t) -> const Field& {
        for (size_t k = 0; k < tr.times.size(); ++k)
            if (std::abs(tr.times[k] - t) < 1e-9) return tr.f[k];
        throw std::invalid_argument("increments_at: " + std::to_string(t) + " is not an output time");
    };
    std::vector<double> out;
    for (size_t k = 1; k < times.size(); ++k) out.push_back(l2(find(times[k]) - find(times[k - 1])));
    return out;
}

void write_diagnostics_csv(const DiagnosticsSeries& d, const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << kDiagnosticsHeader << '\n' << std::setprecision(17);
    for (const auto& r : d)
        os << r.t << ',' << r.l2_f << ',' << r.l2_xf << ',' << r.l2_x2f << ',' << r.linf_u << ',' << r.t_linf_u << ','
           << r.cauchy_inc << '\n';
}

DiagnosticsSeries read_diagnostics_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(is, line);
    if (line != kDiagnosticsHeader) throw std::runtime_error(path + ": unexpected header");
    DiagnosticsSeries d;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        DiagRow r{};
        char c;
        ls >> r.t >> c >> r.l2_f >> c >> r.l2_xf >> c >> r.l2_x2f >> c >> r.linf_u >> c >> r.t_linf_u >> c >> r.cauchy_inc;
        d.push_back(r);
    }
    return d;
}

}
