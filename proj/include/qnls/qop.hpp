#pragma once

#include "qnls/symbol.hpp"

#include <vector>

namespace qnls {

// Dealiased band D = {|k_1|, |k_2| <= K} with 3K < N: products of two fields in D never alias
// back into D, so truncating a pointwise product to D equals the true frequency sum restricted
// to D.
int dealias_K(int N);
bool in_band(const Grid& g, int flat, int K);
Field project_dealiased(const Field& f);

// All (xi, eta, zeta = xi - eta) with the three frequencies in D and xi = eta + zeta exactly.
struct PairList {
    Grid grid;
    int K = 0;
    std::vector<int> xi, eta, zeta;
    size_t size() const { return xi.size(); }
    Point point(size_t i) const;          // (xi, eta)
    Point swapped_point(size_t i) const;  // (xi, zeta)
};
PairList make_pairs(const Grid& g);

enum class QMethod { Auto, Direct, Structured };

// P_D T_q(P_D a, P_D b).  Direct sums over the pair list; Structured writes
// q = 1 + (l - 1) psi(|xi|^2 + |eta|^2), psi(rho) = b(sqrt(rho)), and expands psi(a + b) in a
// low-rank sum of products obtained from a Chebyshev tensor interpolant.
class QOperator {
public:
    QOperator(const Grid& g, const LinearFunctional& l, QMethod m = QMethod::Auto, double sep_tol = 1e-10);

    Field apply(const Field& a, const Field& b) const;
    QMethod method() const { return method_; }
    int rank() const { return static_cast<int>(lam_.size()); }
    const Grid& grid() const { return grid_; }
    const LinearFunctional& ell() const { return ell_; }
    const PairList& pairs() const;      // built on demand for the direct method
    const std::vector<double>& qvals() const;
    double psi_error() const { return psi_err_; }

private:
    Grid grid_;
    LinearFunctional ell_;
    QMethod method_;
    mutable PairList pairs_;
    mutable std::vector<double> q_;
    std::vector<double> lam_;
    std::vector<std::vector<double>> U_;  // U_[k][flat] = u_k(|xi|^2)
    double psi_err_ = 0;
};

}
