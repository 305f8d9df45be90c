#include "qnls/normal_form.hpp"

#include "qnls/pseudo.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace qnls {

namespace {

const PhaseSpec kPP = PhaseSpec::parse("++");
const PhaseSpec kMM = PhaseSpec::parse("--");

void check_floor(double chiT, double phi, const char* who)
{
    if (chiT > 0 && phi == 0)
        throw std::logic_error(std::string(who) + ": chi^T is positive where the phase vanishes");
}

}

NormalForm::NormalForm(const ExperimentConfig& cfg, const CutoffParams& cut) : cfg_(cfg), cut_(cut)
{
    if (cfg.mode != NonlinMode::Standard) throw ConfigError("normal form: standard mode only");
    if (cfg.N > 64) throw ConfigError("normal form: frequency sums limited to N <= 64");
    pl_ = make_pairs(cfg.grid());
    size_t n = pl_.size();
    q_.resize(n);
    qs_.resize(n);
    phpp_.resize(n);
    phmm_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        Point p = pl_.point(i);
        q_[i] = q_value(cfg.ell, p[0], p[1], p[2], p[3]);
        qs_[i] = q_value(cfg.ell, p[0], p[1], p[0] - p[2], p[1] - p[3]);
        phpp_[i] = phase_eval(kPP, p);
        phmm_[i] = phase_eval(kMM, p);
    }
}

Field NormalForm::boundary(const Field& f, double s) const
{
    CutoffFamily cpp(kPP, s, cut_), cmm(kMM, s, cut_);
    Field F = project_dealiased(f), Fb = F.conj();
    Field out(F.grid, Rep::Frequency);
    const cd I(0, 1);
    for (size_t i = 0; i < pl_.size(); ++i) {
        Point p = pl_.point(i);
        int e = pl_.eta[i], z = pl_.zeta[i];
        double tp = cpp.eval(p).T, tm = cmm.eval(p).T;
        cd v = 0;
        if (tp > 0) {
            check_floor(tp, phpp_[i], "boundary");
            v += cfg_.alpha * tp * q_[i] / (I * phpp_[i]) * std::polar(1.0, s * phpp_[i]) * F.v[e] * F.v[z];
        }
        if (tm > 0) {
            check_floor(tm, phmm_[i], "boundary");
            v += cfg_.beta * tm * q_[i] / (I * phmm_[i]) * std::polar(1.0, s * phmm_[i]) * Fb.v[e] * Fb.v[z];
        }
        out.v[pl_.xi[i]] += v;
    }
    out *= 1.0 / F.grid.N;
    return out;
}

HIntegrands NormalForm::integrands(const Field& f, const Field& R, double s) const
{
    CutoffFamily cpp(kPP, s, cut_), cmm(kMM, s, cut_);
    Field F = project_dealiased(f), Fb = F.conj();
    Field Rf = project_dealiased(R), Rb = Rf.conj();
    const Grid& g = F.grid;
    HIntegrands out{Field(g, Rep::Frequency), Field(g, Rep::Frequency), Field(g, Rep::Frequency)};
    const cd I(0, 1);
    for (size_t i = 0; i < pl_.size(); ++i) {
        Point p = pl_.point(i), ps = pl_.swapped_point(i);
        int x = pl_.xi[i], e = pl_.eta[i], z = pl_.zeta[i];
        ChiValues cp = cpp.eval(p), dp = cpp.eval_dt(p), cm = cmm.eval(p), dm = cmm.eval_dt(p);
        double tps = cpp.eval(ps).T, tms = cmm.eval(ps).T;
        cd ep = std::polar(1.0, s * phpp_[i]), em = std::polar(1.0, s * phmm_[i]);
        cd FF = F.v[e] * F.v[z], BB = Fb.v[e] * Fb.v[z];

        cd a1 = cp.R * q_[i], b1 = cm.R * q_[i];
        cd Kp = 0, Km = 0;
        if (dp.T != 0 || cp.T > 0 || tps > 0) {
            check_floor(std::max({std::abs(dp.T), cp.T, tps}), phpp_[i], "integrands");
            a1 -= dp.T * q_[i] / (I * phpp_[i]);
            Kp = (cp.T * q_[i] + tps * qs_[i]) / (I * phpp_[i]);
        }
        if (dm.T != 0 || cm.T > 0 || tms > 0) {
            check_floor(std::max({std::abs(dm.T), cm.T, tms}), phmm_[i], "integrands");
            b1 -= dm.T * q_[i] / (I * phmm_[i]);
            Km = (cm.T * q_[i] + tms * qs_[i]) / (I * phmm_[i]);
        }
        out.h1.v[x] += cfg_.alpha * a1 * ep * FF + cfg_.beta * b1 * em * BB;
        out.h2.v[x] += cfg_.alpha * cp.S * q_[i] * ep * FF;
        out.h3.v[x] -= cfg_.alpha * Kp * ep * F.v[z] * Rf.v[e] + cfg_.beta * Km * em * Fb.v[z] * Rb.v[e];
    }
    double inv = 1.0 / g.N;
    out.h1 *= inv;
    out.h2 *= inv;
    out.h3 *= inv;
    return out;
}

Field NormalForm::h3_direct(const Field& f, double s, bool override_guard) const
{
    Grid g = cfg_.grid();
    Field F = project_dealiased(f), Fb = F.conj();
    double lim = dealias_K(g.N) * g.dk() * (1 + 1e-9);
    auto inD = [lim](double a, double b) { return std::abs(a) <= lim && std::abs(b) <= lim; };
    CutoffFamily cpp(kPP, s, cut_), cmm(kMM, s, cut_);
    LinearFunctional l = cfg_.ell;
    const cd I(0, 1);
    // K(xi, eta) = (chi^T(xi,eta) q(xi,eta) + chi^T(xi,xi-eta) q(xi,xi-eta)) / (i phi(xi,eta))
    auto kernel = [=](const CutoffFamily& fam, const PhaseSpec& ph, const Point& p) -> cd {
        Point a{p[0], p[1], p[2], p[3], 0, 0}, b{p[0], p[1], p[0] - p[2], p[1] - p[3], 0, 0};
        double ta = fam.eval(a).T, tb = fam.eval(b).T;
        if (ta == 0 && tb == 0) return 0.0;
        double phi = phase_eval(ph, a);
        check_floor(std::max(ta, tb), phi, "h3_direct");
        return (ta * q_value(l, a[0], a[1], a[2], a[3]) + tb * q_value(l, b[0], b[1], b[2], b[3])) / (I * phi);
    };
    auto inner_phase = [](const PhaseSpec& ph, const Point& p) {
        Point b{p[2], p[3], p[4], p[5], 0, 0};
        return phase_eval(ph, b);
    };
    auto make = [&](cd coef, bool outer_pp, bool inner_pp, int inner_sign, bool reflect_q) {
        return closed_symbol("h3term", 3, [=](const Point& p) -> cd {
            if (!inD(p[0], p[1]) || !inD(p[2], p[3])) return 0.0;
            const PhaseSpec& po = outer_pp ? kPP : kMM;
            const PhaseSpec& pi = inner_pp ? kPP : kMM;
            cd K = kernel(outer_pp ? cpp : cmm, po, p);
            if (K == 0.0) return 0.0;
            double qi = reflect_q ? q_value(l, -p[2], -p[3], -p[4], -p[5]) : q_value(l, p[2], p[3], p[4], p[5]);
            Point a{p[0], p[1], p[2], p[3], 0, 0};
            double ph = phase_eval(po, a) + inner_sign * inner_phase(pi, p);
            return -coef * K * qi * std::polar(1.0, s * ph);
        });
    };
    ApplyOptions opt;
    opt.override_guard = override_guard;
    cd al = cfg_.alpha, be = cfg_.beta;
    Field out = apply_trilinear(make(al * al, true, true, 1, false), F, F, F, opt);
    out += apply_trilinear(make(al * be, true, false, 1, false), Fb, Fb, F, opt);
    out += apply_trilinear(make(be * std::conj(al), false, true, -1, true), Fb, Fb, Fb, opt);
    out += apply_trilinear(make(std::norm(be), false, false, -1, true), F, F, Fb, opt);
    return out;
}

const char* const kNormReportHeader = "t,piece,norm_name,value,envelope,quotient";

std::vector<NormRow> norm_report(const NormalFormState& st, double eps)
{
    double t = st.t, e2 = eps * eps;
    std::vector<NormRow> rows;
    auto add = [&](const std::string& piece, const std::string& name, double v, double env) {
        rows.push_back({t, piece, name, v, env, env > 0 ? v / env : 0.0});
    };
    Field h = st.h();
    add("g", "l2", l2(st.g), e2 / std::sqrt(t));
    add("g", "linf_u", linf(propagate(st.g, -t)), e2 / t);
    add("h", "l2_xw", weighted_norm(h, 1, 2), e2);
    add("h", "l2_x2", weighted_norm(h, 2, 2), e2 * std::pow(t, 5.0 / 8));
    add("h", "linf_u", linf(propagate(h, -t)), e2 / t);
    add("h1", "l2", l2(st.h1), e2);
    add("h2", "l2", l2(st.h2), e2);
    add("h3", "l2", l2(st.h3), e2);
    return rows;
}

void write_norm_report_csv(const std::vector<NormRow>& rows, const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << kNormReportHeader << '\n' << std::setprecision(17);
    for (const auto& r : rows)
        os << r.t << ',' << r.piece << ',' << r.norm_name << ',' << r.value << ',' << r.envelope << ',' << r.quotient
           << '\n';
}

NormalFormRun run_normal_form(const ExperimentConfig& cfg_in, const CutoffParams& cut)
{
    ExperimentConfig cfg = cfg_in;
    cfg.q_method = QMethod::Direct;
    cfg.validate();
    double span = (cfg.T - cfg.t0) / cfg.dt;
    long n = std::lround(span);
    if (std::abs(span - n) > 1e-9 || n % 2)
        throw ConfigError("normal form: (T - 2)/dt must be an even integer");
    std::vector<long> out_steps;
    for (double t : cfg.output_times()) {
        double k = (t - cfg.t0) / cfg.dt;
        long kk = std::lround(k);
        if (std::abs(k - kk) > 1e-9 || kk % 2) throw ConfigError("normal form: output times must fall on even steps");
        out_steps.push_back(kk);
    }
    NormalForm nf(cfg, cut);
    ProfileRhs rhs(cfg);
    Field f = initial_profile(cfg);
    NormalFormState st;
    st.u_star = f;
    Grid g = cfg.grid();
    st.h1 = st.h2 = st.h3 = zeros(g, Rep::Frequency);
    Field g2 = nf.boundary(f, cfg.t0);
    NormalFormRun run;
    std::vector<HIntegrands> win;  // integrands at steps k-2, k-1
    size_t next_out = 0;
    for (long k = 0; k <= n; ++k) {
        double s = cfg.t0 + k * cfg.dt;
        Field R;
        Field fn;
        if (k < n)
            fn = rk4_step(rhs, f, s, cfg.dt, &R);
        else
            R = rhs(f, s);
        win.push_back(nf.integrands(f, R, s));
        if (k >= 2 && k % 2 == 0) {
            const HIntegrands &a = win[0], &b = win[1], &c = win[2];
            double w = cfg.dt / 3;
            st.h1 += w * (a.h1 + 4.0 * b.h1 + c.h1);
            st.h2 += w * (a.h2 + 4.0 * b.h2 + c.h2);
            st.h3 += w * (a.h3 + 4.0 * b.h3 + c.h3);
            win.erase(win.begin(), win.begin() + 2);
        }
        if (next_out < out_steps.size() && out_steps[next_out] == k) {
            st.t = s;
            st.f = f;
            st.g = nf.boundary(f, s) - g2;
            run.states.push_back(st);
            auto rows = norm_report(st, cfg.eps);
            run.report.insert(run.report.end(), rows.begin(), rows.end());
            ++next_out;
        }
        if (k < n) f = std::move(fn);
    }
    return run;
}

}
