#pragma once

#include "qnls/symbol.hpp"

#include <string>
#include <vector>

namespace qnls {

// Quadratic: phi = -|xi|^2 + s1 |eta|^2 + s2 |xi-eta|^2.
// Cubic:     phi = -|xi|^2 + s1 |xi-eta|^2 + s2 |eta-sigma|^2 + s3 |sigma|^2.
struct PhaseSpec {
    int arity = 2;
    int s[3] = {1, 1, 1};

    std::string name() const;
    static PhaseSpec parse(const std::string& name);  // "++", "-+", "+--", ...
    static std::vector<PhaseSpec> all();
    bool operator==(const PhaseSpec& o) const;
};

enum Var { XI = 0, ETA = 1, SIGMA = 2 };

double phase_eval(const PhaseSpec& ph, const Point& p);
// Gradient with respect to the listed variables, two components per variable.
std::vector<double> phase_grad(const PhaseSpec& ph, const std::vector<Var>& wrt, const Point& p);
// The variables whose gradient defines the space-resonant set: eta, or (eta, sigma).
std::vector<Var> space_vars(const PhaseSpec& ph);
double space_grad_norm(const PhaseSpec& ph, const Point& p);

// d_xi phi + 2 d_eta phi + d_sigma phi for phi = phi_{-++}.
std::array<double, 2> check_null_identity(const Point& p);

}
