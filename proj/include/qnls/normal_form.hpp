#pragma once

#include "qnls/cutoffs.hpp"
#include "qnls/evolution.hpp"

#include <string>
#include <vector>

namespace qnls {

struct NormalFormState {
    double t = 2;
    Field u_star, f, g, h1, h2, h3;
    Field h() const { return h1 + h2 + h3; }
    double residual() const { return l2(f - (u_star + g + h1 + h2 + h3)); }
};

struct HIntegrands {
    Field h1, h2, h3;
};

// Normal form of the standard-mode equation on the dealiased band, evaluated by explicit
// frequency sums over the pair list (desk grids only).
class NormalForm {
public:
    NormalForm(const ExperimentConfig& cfg, const CutoffParams& cut = {});

    // The boundary term at time s; g(t) is boundary(f(t), t) - boundary(u_*, 2).
    Field boundary(const Field& f, double s) const;
    // Integrands of h1, h2, h3 at time s given f(s) and R = d_s f(s).
    HIntegrands integrands(const Field& f, const Field& R, double s) const;
    // h3 integrand as a direct trilinear sum with the four coefficients alpha^2, alpha beta,
    // beta conj(alpha), |beta|^2 (cost N^6; shadow grids only).
    Field h3_direct(const Field& f, double s, bool override_guard = false) const;

    const ExperimentConfig& config() const { return cfg_; }
    const PairList& pairs() const { return pl_; }

private:
    ExperimentConfig cfg_;
    CutoffParams cut_;
    PairList pl_;
    std::vector<double> q_, qs_, phpp_, phmm_;  // q(xi,eta), q(xi,zeta), phases at (xi,eta)
};

struct NormRow {
    double t;
    std::string piece, norm_name;
    double value, envelope, quotient;
};

std::vector<NormRow> norm_report(const NormalFormState& st, double eps);

extern const char* const kNormReportHeader;
void write_norm_report_csv(const std::vector<NormRow>& rows, const std::string& path);

struct NormalFormRun {
    std::vector<NormalFormState> states;  // at output times
    std::vector<NormRow> report;
};

// Integrates f with RK4 and accumulates h by composite Simpson on the step grid; outputs are
// taken at even step counts, so (T - 2)/dt must be an even integer and output times must fall
// on even steps.
NormalFormRun run_normal_form(const ExperimentConfig& cfg, const CutoffParams& cut = {});

}
