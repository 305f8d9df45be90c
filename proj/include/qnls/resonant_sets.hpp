#pragma once

#include "qnls/phase.hpp"

#include <string>
#include <vector>

namespace qnls {

// Lattice search box: n points per coordinate at x_i = (i - n/2) h, h = 2R/n, so the origin is a
// lattice point.  axes = 2 searches the full frequency space; axes = 1 restricts every frequency
// vector to the first coordinate axis (the collinear slice).
struct SearchBox {
    double R = 32;
    int n = 64;
    int axes = 2;
    double h() const { return 2 * R / n; }
    double coord(int i) const { return (i - n / 2) * h(); }
};

// A grid point is classified into a set when its cell (the cube of side h centred on it) meets
// the set, relaxed by tol: |phi| <= tol*scale^2 for T, a kernel point of the space gradient within
// tol*scale of the cell for S, where scale = |point| + 1.  Ranges of the quadratic phase over a
// cell are computed exactly, so with tol -> 0 the clouds are the cells meeting the exact sets.
struct ResonantClouds {
    PhaseSpec phase;
    SearchBox box;
    std::vector<Point> S, T, R;
};

ResonantClouds resonant_sets(const PhaseSpec& ph, const SearchBox& box, double tol);

// CSV with columns: xi1,xi2,eta1,eta2,sigma1,sigma2,abs_phi,abs_grad,class.  T points are thinned by
// t_stride (1 keeps all).
void write_clouds_csv(const ResonantClouds& c, const std::string& path, int t_stride = 1);

// Exact range of the quadratic form x^T Q x over a box lo <= x <= hi (dimension <= 3).
std::pair<double, double> quadratic_range(const std::vector<double>& Q, int m, const double* lo,
                                          const double* hi);

}
