#include "qnls/cutoffs.hpp"

#include "qnls/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace qnls {

std::vector<double> space_resonant_coefficients(const PhaseSpec& ph)
{
    std::string n = ph.name();
    if (n == "++" || n == "--") return {2, 1};
    if (n == "-+" || n == "+-") return {0, 1};
    if (n == "+++" || n == "---") return {3, 2, 1};
    return {1, 2, 1};  // +--, -++
}

double subspace_distance(const Point& p, const std::vector<double>& c)
{
    int m = static_cast<int>(c.size());
    double cc = 0;
    for (double x : c) cc += x * x;
    double d2 = 0;
    for (int comp = 0; comp < 2; ++comp) {
        double v = 0;
        for (int i = 0; i < m; ++i) v += c[i] * p[2 * i + comp];
        v /= cc;
        for (int i = 0; i < m; ++i) {
            double e = p[2 * i + comp] - c[i] * v;
            d2 += e * e;
        }
    }
    return std::sqrt(d2);
}

CutoffFamily::CutoffFamily(const PhaseSpec& ph, double t, const CutoffParams& par)
    : ph_(ph), t_(t), par_(par)
{
    std::string n = ph.name();
    has_near_ = n == "-+" || n == "+-" || n == "-++";
    has_S_ = !(n == "--" || n == "---");
    scoef_ = space_resonant_coefficients(ph);
}

CutoffShape CutoffFamily::shape(const Point& p) const
{
    CutoffShape s;
    double r2 = 0;
    for (int i = 0; i < 2 * ph_.arity; ++i) r2 += p[i] * p[i];
    s.r = std::sqrt(r2);
    if (s.r == 0) return s;
    s.a = phase_eval(ph_, p) / r2;
    s.c = subspace_distance(p, scoef_) / s.r;
    // for the phases with a near piece the space-time resonant set coincides with S
    if (has_near_) s.near = 1 - rise(s.c / par_.near_width);
    s.rawT = rise(std::abs(s.a) / par_.deltaT);
    s.rawS = has_S_ ? rise(s.c / par_.deltaS) : 0.0;
    double w = s.rawT + s.rawS;
    if (w > 0) {
        s.tT = s.rawT / w;
        s.tS = s.rawS / w;
    }
    return s;
}

ChiValues CutoffFamily::eval(const Point& p) const
{
    double st = std::sqrt(t_);
    Point q = p;
    for (auto& x : q) x *= st;
    CutoffShape s = shape(q);
    ChiValues v;
    v.R = unit_bump(s.r);
    double out = 1 - v.R;
    v.N = out * s.near;
    v.T = out * (1 - s.near) * s.tT;
    v.S = out * (1 - s.near) * s.tS;
    return v;
}

ChiValues CutoffFamily::eval_dt(const Point& p) const
{
    double st = std::sqrt(t_);
    Point q = p;
    for (auto& x : q) x *= st;
    CutoffShape s = shape(q);
    double r = s.r / st;
    double db = unit_bump_deriv(s.r) * r / (2 * st);
    ChiValues v;
    v.R = db;
    v.N = -db * s.near;
    v.T = -db * (1 - s.near) * s.tT;
    v.S = -db * (1 - s.near) * s.tS;
    return v;
}

CutoffFamily build_cutoffs(const PhaseSpec& ph, double t, const CutoffParams& par)
{
    if (!(t > 0)) throw ConfigError("build_cutoffs: t must be positive");
    CutoffFamily fam(ph, t, par);
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> nd;
    int dims = 2 * ph.arity;
    auto s = space_resonant_coefficients(ph);
    for (int i = 0; i < 200000; ++i) {
        Point p{};
        double n = 0;
        if (i % 4 == 0) {
            // concentrate samples near S, where T and S meet
            double v1 = nd(rng), v2 = nd(rng), eps = 0.3 * std::abs(nd(rng));
            for (int k = 0; k < ph.arity; ++k) {
                p[2 * k] = s[k] * v1 + eps * nd(rng);
                p[2 * k + 1] = s[k] * v2 + eps * nd(rng);
            }
        } else {
            for (int d = 0; d < dims; ++d) p[d] = nd(rng);
        }
        for (int d = 0; d < dims; ++d) n += p[d] * p[d];
        n = std::sqrt(n);
        if (n == 0) continue;
        for (int d = 0; d < dims; ++d) p[d] /= n;
        CutoffShape sh = fam.shape(p);
        if (sh.near < 1 && sh.rawT + sh.rawS < 1) {
            std::ostringstream os;
            os << "build_cutoffs: coverage failure for phase " << ph.name() << " near direction (";
            for (int d = 0; d < dims; ++d) os << (d ? "," : "") << p[d];
            os << "): phi/r^2=" << sh.a << ", dist(S)/r=" << sh.c << ", weight=" << sh.rawT + sh.rawS;
            throw CoverageError(os.str());
        }
    }
    return fam;
}

LowerBounds support_lower_bounds(const CutoffFamily& fam, const std::vector<Point>& samples)
{
    LowerBounds lb;
    lb.min_phi_T = lb.min_grad_S = std::numeric_limits<double>::infinity();
    const PhaseSpec& ph = fam.phase();
    // per dyadic shell minima for the growth fit
    std::vector<std::pair<double, double>> shellT(40, {0, 1e300}), shellS(40, {0, 1e300});
    for (const auto& p : samples) {
        ChiValues v = fam.eval(p);
        double r = 0;
        for (int i = 0; i < 2 * ph.arity; ++i) r += p[i] * p[i];
        r = std::sqrt(r);
        int b = std::clamp(static_cast<int>(std::floor(std::log2(r + 1) * 2)), 0, 39);
        if (v.T > 0) {
            double a = std::abs(phase_eval(ph, p));
            lb.min_phi_T = std::min(lb.min_phi_T, a);
            shellT[b].first = std::max(shellT[b].first, r + 1);
            shellT[b].second = std::min(shellT[b].second, a);
            ++lb.count_T;
        }
        if (v.S > 0) {
            double g = space_grad_norm(ph, p);
            lb.min_grad_S = std::min(lb.min_grad_S, g);
            shellS[b].first = std::max(shellS[b].first, r + 1);
            shellS[b].second = std::min(shellS[b].second, g);
            ++lb.count_S;
        }
    }
    auto fit = [](const std::vector<std::pair<double, double>>& sh) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& [x, y] : sh) {
            if (x <= 0 || y >= 1e299 || y <= 0) continue;
            double lx = std::log(x), ly = std::log(y);
            sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
            ++n;
        }
        if (n < 2) return 0.0;
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    lb.exponent_T = fit(shellT);
    lb.exponent_S = fit(shellS);
    if (!lb.count_T) lb.min_phi_T = 0;
    if (!lb.count_S) lb.min_grad_S = 0;
    return lb;
}

}
