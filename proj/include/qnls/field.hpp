#pragma once

#include "qnls/grid.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qnls {

using cd = std::complex<double>;

enum class Rep { Physical, Frequency };

// Frequency coefficients use the unitary DFT: F[k] = (1/N) sum_x f(x) e^{-2 pi i k.x/N},
// stored in FFT order with x measured from the lower-left corner of the box.
struct Field {
    Grid grid;
    Rep rep = Rep::Physical;
    std::vector<cd> v;

    Field() = default;
    Field(const Grid& g, Rep r) : grid(g), rep(r), v(static_cast<size_t>(g.size())) {}

    cd& operator()(int i, int j) { return v[static_cast<size_t>(i) * grid.N + j]; }
    cd operator()(int i, int j) const { return v[static_cast<size_t>(i) * grid.N + j]; }

    Field freq() const;
    Field phys() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(cd s);
    Field conj() const;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cd s, Field a);

Field zeros(const Grid& g, Rep r = Rep::Physical);
Field from_function(const Grid& g, const std::function<cd(double, double)>& f);
Field from_spectrum(const Grid& g, const std::function<cd(double, double)>& fhat);
Field single_mode(const Grid& g, int kx, int ky, cd amp = 1.0);
Field gaussian(const Grid& g, double eps, double w, double x0 = 0, double y0 = 0, double kx0 = 0,
               double ky0 = 0);

// Discrete L2 norm in continuum units (cell-area quadrature); identical in both representations.
double l2(const Field& f);
double linf(const Field& f);
double lp(const Field& f, double p);

// Multiply frequency coefficients by m(xi) evaluated at continuum frequencies.
Field apply_multiplier(const Field& f, const std::function<cd(double, double)>& m);

// e^{itDelta}: multiplication by e^{-it|xi|^2}.
Field propagate(const Field& f, double t);

struct NormOptions {
    double boundary_threshold = 1e-8;
};

// w = 0: ||f||_p; w = 1: ||<x> f||_p; w = 2: || |x|^2 f||_p.  p = inf for the sup norm.
double weighted_norm(const Field& f, int w, double p, const NormOptions& opt = {});
// Fraction of the L2 mass sitting within L/8 of the box boundary.
double boundary_mass_fraction(const Field& f);
// Multiply by x_1, x_2 or |x|^2 in physical space.
Field times_x(const Field& f, int axis);
Field times_x2(const Field& f);

void save_snapshot(const Field& f, const std::string& path);
Field load_snapshot(const std::string& path);

}
