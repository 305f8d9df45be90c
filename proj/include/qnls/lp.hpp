#pragma once

#include "qnls/field.hpp"

#include <utility>

namespace qnls {

// Radial dyadic partition: theta(xi) = big(xi) - big(2 xi), where big = 1 on |xi| <= 3/2 and
// 0 on |xi| >= 8/3, so theta lives in the annulus (3/4, 8/3) and the dyadic sum telescopes.
double lp_big(double r);
double lp_theta(double r);
double lp_low(double r);  // Theta(xi) = sum_{j<0} theta(xi/2^j) = big(2 xi), Theta(0) = 1

struct DyadicRange {
    int jmin, jmax;
};
DyadicRange dyadic_range(const Grid& g);

Field project_band(const Field& f, int j);
Field project_low(const Field& f, int j);

// Bands jmin..jmax together with the low remainder P_{<jmin}; they sum to f.
struct BandSplit {
    int jmin;
    Field low;
    std::vector<Field> bands;  // bands[i] = P_{jmin+i} f
};
BandSplit split_bands(const Field& f);

// S f = (|P_{<jmin} f|^2 + sum_j |P_j f|^2)^{1/2};  M f = sup_j |P_{<j} f|.
Field square_function(const Field& f);
Field maximal_function(const Field& f);
// min over nonzero lattice modes of Theta(xi/2^jmin)^2 + sum_j theta(xi/2^j)^2
double square_frame_bound(const Grid& g);

double bernstein_ratio(const Field& f, int j, double p, double q);

double lambda_Z(double r);
Field lambda_op(const Field& f, double alpha, double t);

// (||e^{-itD}(x f)||_4^2, ||e^{-itD} f||_inf ||e^{-itD}(x^2 f)||_2)
std::pair<double, double> check_gagnir(const Field& f, double t, const NormOptions& opt = {});

}
