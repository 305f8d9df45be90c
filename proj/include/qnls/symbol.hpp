#pragma once

#include "qnls/field.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace qnls {

// A frequency point (xi, eta[, sigma]) flattened as xi_1, xi_2, eta_1, eta_2, sigma_1, sigma_2.
using Point = std::array<double, 6>;
using SymbolFn = std::function<cd(const Point&)>;

struct ClassTag {
    bool set = false;
    int k = 0, kp = 0;
    double t = 0;  // 0: M^{k,k'}; > 0: m_t^{k,k'}
};

// One separable term a(xi) b(eta) c(xi - eta), each sampled on the lattice in FFT order.
// An empty vector stands for the constant 1.
struct SepTerm {
    std::vector<cd> a, b, c;
};

enum class SymbolKind { Closed, Sampled, Separable };

struct Symbol {
    std::string name;
    int arity = 2;
    SymbolKind kind = SymbolKind::Closed;
    SymbolFn fn;                 // closed form
    Grid grid;                   // lattice for sampled / separable forms
    std::vector<cd> table;       // sampled: table[eta * N^2 + zeta] = m(eta + zeta, eta)
    std::vector<SepTerm> terms;  // separable
    double sep_error = 0;
    ClassTag cls;

    cd operator()(const Point& p) const { return fn(p); }
};

Symbol closed_symbol(std::string name, int arity, SymbolFn fn, ClassTag cls = {});
Symbol constant_symbol(cd c, int arity = 2);

// Value of an arity-2 symbol at lattice indices (flat, FFT order) of eta and zeta = xi - eta,
// with xi taken as the lattice representative of eta + zeta.
cd eval_pair(const Symbol& m, int eta, int zeta);

struct LinearFunctional {
    double c[4] = {0.25, 0, 0.25, 0};  // coefficients on xi_1, xi_2, eta_1, eta_2
    double operator()(double x1, double x2, double e1, double e2) const
    {
        return c[0] * x1 + c[1] * x2 + c[2] * e1 + c[3] * e2;
    }
};

double q_value(const LinearFunctional& l, double x1, double x2, double e1, double e2);
Symbol build_q(const LinearFunctional& l = {});

struct CmReport {
    double value = 0;
    std::vector<double> per_level;  // norm restricted to each refinement level
};
// sup over samples and |alpha| <= order of (sum_i |xi_i|)^{|alpha|} |d^alpha m|.
CmReport cm_norm(const Symbol& m, int order, const std::vector<Point>& samples);
// Central finite-difference derivative of order alpha (one entry per real coordinate).
cd fd_derivative(const Symbol& m, const Point& p, const std::array<int, 6>& alpha, double h);

// Samples on dyadic shells r = 2^k for k in [k0, k1], random directions.
std::vector<Point> shell_samples(int arity, double r, int count, unsigned seed);

struct ClassReport {
    bool pass = false;
    double C_inner = 0, C_outer = 0;
    double max_inside_vanishing = 0;  // m_t classes: max |m| on r <= c/sqrt(t)
    std::string detail;
};
ClassReport check_class(const Symbol& m, int k, int kp, double t, int order, double cap = 1e3);

struct SeparableReport {
    Symbol symbol;
    double error = 0;
    int numerical_rank = 0;
    std::vector<double> singular_values;
};
SeparableReport separable_approx(const Symbol& m, int rank, const Grid& g);
Symbol sampled_symbol(const Symbol& m, const Grid& g);

void write_manifest(const std::vector<Symbol>& syms, const std::string& path);

}
