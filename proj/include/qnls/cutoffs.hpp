#pragma once

#include "qnls/phase.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qnls {

struct CutoffParams {
    double deltaT = 0.05;
    double deltaS = 0.05;
    double near_width = 0.2;  // neighbourhood of a nontrivial space-time resonant set
};

struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChiValues {
    double R = 0, S = 0, T = 0, N = 0;
    double sum() const { return R + S + T + N; }
};

// Degree-0 description of a point: everything except the radial bump.
struct CutoffShape {
    double r = 0;     // |(xi, eta[, sigma])|
    double a = 0;     // phi / r^2
    double c = 0;     // dist(p, S) / r
    double near = 0;  // weight of the neighbourhood piece (phases with nontrivial R only)
    double tT = 0;    // share of the remainder given to chi^T
    double tS = 0;
    double rawT = 0, rawS = 0;  // weights before renormalisation
};

// R/S/T partition for one phase, dilated to time t: chi_t(p) = chi_1(sqrt(t) p).  For the phases
// whose space-time resonant set is more than the origin (-+, +-, -++) a fourth piece chi^N covers
// a conic neighbourhood of that set.
class CutoffFamily {
public:
    CutoffFamily(const PhaseSpec& ph, double t, const CutoffParams& par);

    const PhaseSpec& phase() const { return ph_; }
    double t() const { return t_; }
    const CutoffParams& params() const { return par_; }
    bool has_near() const { return has_near_; }
    bool has_space_piece() const { return has_S_; }

    CutoffShape shape(const Point& p) const;
    ChiValues eval(const Point& p) const;
    ChiValues eval_dt(const Point& p) const;  // d/dt of eval at fixed p
    CutoffFamily at(double t) const { return CutoffFamily(ph_, t, par_); }

private:
    PhaseSpec ph_;
    double t_;
    CutoffParams par_;
    bool has_near_, has_S_;
    std::vector<double> scoef_;  // S = {(c_1 v, c_2 v[, c_3 v])}
};

// Checks coverage on a dense sample of the unit sphere; throws CoverageError naming the region.
CutoffFamily build_cutoffs(const PhaseSpec& ph, double t, const CutoffParams& par = {});

struct LowerBounds {
    double min_phi_T = 0, min_grad_S = 0;
    double exponent_T = 0, exponent_S = 0;  // fitted growth of the minima in |p| + 1
    int count_T = 0, count_S = 0;
};
LowerBounds support_lower_bounds(const CutoffFamily& fam, const std::vector<Point>& samples);

// Distance from p to the subspace {(c_1 v, ..., c_m v)}.
double subspace_distance(const Point& p, const std::vector<double>& c);
std::vector<double> space_resonant_coefficients(const PhaseSpec& ph);

}
