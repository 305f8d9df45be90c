#pragma once

#include "qnls/qop.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnls {

enum class NonlinMode { Standard, Contrast };

struct ExperimentConfig {
    double L = 128;
    int N = 32;
    double eps = 0.01;
    double width = 8;
    double x0 = 0, y0 = 0, kx0 = 0, ky0 = 0;
    cd alpha = 1, beta = 1, gamma = 1;
    NonlinMode mode = NonlinMode::Standard;
    LinearFunctional ell;
    QMethod q_method = QMethod::Auto;
    double q_tol = 1e-10;
    double t0 = 2, T = 10, dt = 0.125;
    double out_every = 1;
    std::vector<double> out_times;  // overrides out_every when nonempty
    double growth_abort = 10;
    double stability_ceiling = 1.5;  // bound on dt * max_{xi in D} |xi|^2
    bool keep_trajectory = true;

    void validate() const;
    Grid grid() const { return make_grid(L, N); }
    std::vector<double> output_times() const;
};

// f(2) = u_* = P_D(eps * Gaussian)
Field initial_profile(const ExperimentConfig& cfg);

// d_t f = e^{isD}(alpha Q(u,u) + beta Q(ubar,ubar) [+ gamma Q(u,ubar)]), u = e^{-isD} f.
class ProfileRhs {
public:
    explicit ProfileRhs(const ExperimentConfig& cfg);
    Field operator()(const Field& f, double s) const;
    const QOperator& q() const { return *q_; }
    const ExperimentConfig& config() const { return cfg_; }

private:
    ExperimentConfig cfg_;
    std::shared_ptr<QOperator> q_;
};

Field rhs_profile(const Field& f, double s, const ExperimentConfig& cfg);
// The same right-hand side as an explicit frequency sum with the phases e^{is phi}.
Field rhs_quadrature(const Field& f, double s, const ExperimentConfig& cfg);

Field rk4_step(const ProfileRhs& rhs, const Field& f, double s, double dt, Field* k1_out = nullptr);

struct DiagRow {
    double t, l2_f, l2_xf, l2_x2f, linf_u, t_linf_u, cauchy_inc;
};
using DiagnosticsSeries = std::vector<DiagRow>;

struct InstabilityError : std::runtime_error {
    InstabilityError(const std::string& msg, DiagnosticsSeries d) : std::runtime_error(msg), partial(std::move(d)) {}
    DiagnosticsSeries partial;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> f;
    DiagnosticsSeries diag;
};

DiagRow diagnose(const Field& f, double t, const Field* prev);
Trajectory integrate(const ExperimentConfig& cfg);

std::vector<double> scattering_indicator(const Trajectory& tr);
std::vector<double> decay_indicator(const Trajectory& tr);
// ||f(t_{k+1}) - f(t_k)||_2 between consecutive listed times (which must be output times)
std::vector<double> increments_at(const Trajectory& tr, const std::vector<double>& times);

extern const char* const kDiagnosticsHeader;
void write_diagnostics_csv(const DiagnosticsSeries& d, const std::string& path);
DiagnosticsSeries read_diagnostics_csv(const std::string& path);

}
