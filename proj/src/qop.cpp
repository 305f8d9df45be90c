#include "qnls/qop.hpp"

#include "qnls/pseudo.hpp"
#include "qnls/smooth.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>

namespace qnls {

int dealias_K(int N) { return (N - 1) / 3; }

bool in_band(const Grid& g, int flat, int K)
{
    return std::abs(g.wavenum(flat / g.N)) <= K && std::abs(g.wavenum(flat % g.N)) <= K;
}

Field project_dealiased(const Field& f)
{
    Field out = f.freq();
    int K = dealias_K(out.grid.N);
    for (int i = 0; i < out.grid.size(); ++i)
        if (!in_band(out.grid, i, K)) out.v[i] = 0;
    return out;
}

Point PairList::point(size_t i) const
{
    int N = grid.N;
    return {grid.freq(xi[i] / N), grid.freq(xi[i] % N), grid.freq(eta[i] / N), grid.freq(eta[i] % N), 0, 0};
}

Point PairList::swapped_point(size_t i) const
{
    int N = grid.N;
    return {grid.freq(xi[i] / N), grid.freq(xi[i] % N), grid.freq(zeta[i] / N), grid.freq(zeta[i] % N), 0, 0};
}

PairList make_pairs(const Grid& g)
{
    PairList pl;
    pl.grid = g;
    int K = pl.K = dealias_K(g.N);
    for (int x1 = -K; x1 <= K; ++x1)
        for (int x2 = -K; x2 <= K; ++x2)
            for (int e1 = std::max(-K, x1 - K); e1 <= std::min(K, x1 + K); ++e1)
                for (int e2 = std::max(-K, x2 - K); e2 <= std::min(K, x2 + K); ++e2) {
                    pl.xi.push_back(g.index(x1) * g.N + g.index(x2));
                    pl.eta.push_back(g.index(e1) * g.N + g.index(e2));
                    pl.zeta.push_back(g.index(x1 - e1) * g.N + g.index(x2 - e2));
                }
    return pl;
}

namespace {

double psi(double rho) { return rho >= 4 ? 0.0 : unit_bump(std::sqrt(std::max(rho, 0.0))); }

// Barycentric weights for Chebyshev points of the second kind.
double bary(const std::vector<double>& x, const Eigen::VectorXd& v, double t)
{
    int n = static_cast<int>(x.size());
    double num = 0, den = 0;
    for (int j = 0; j < n; ++j) {
        double d = t - x[j];
        if (d == 0) return v(j);
        double w = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == n - 1 ? 0.5 : 1.0) / d;
        num += w * v(j);
        den += w;
    }
    return num / den;
}

}

QOperator::QOperator(const Grid& g, const LinearFunctional& l, QMethod m, double sep_tol)
    : grid_(g), ell_(l), method_(m)
{
    if (method_ == QMethod::Auto) method_ = g.N <= 64 ? QMethod::Direct : QMethod::Structured;
    if (method_ == QMethod::Direct) return;
    const int n = 321;
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = 2 - 2 * std::cos(M_PI * j / (n - 1));
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = psi(x[i] + x[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const auto& ev = es.eigenvalues();
    double mx = ev.cwiseAbs().maxCoeff();
    std::vector<int> keep;
    for (int k = n - 1; k >= 0; --k)
        if (std::abs(ev(k)) > sep_tol * mx) keep.push_back(k);
    int K = dealias_K(g.N);
    for (int k : keep) {
        Eigen::VectorXd vk = es.eigenvectors().col(k);
        std::vector<double> u(static_cast<size_t>(g.size()), 0.0);
        for (int i = 0; i < g.size(); ++i) {
            if (!in_band(g, i, K)) continue;
            double a = std::pow(g.freq(i / g.N), 2) + std::pow(g.freq(i % g.N), 2);
            if (a < 4) u[i] = bary(x, vk, a);
        }
        lam_.push_back(ev(k));
        U_.push_back(std::move(u));
    }
    // accuracy of the expansion on a sample of lattice radii
    double err = 0;
    for (int i = 0; i < g.size(); i += 7)
        for (int j = 0; j < g.size(); j += 11) {
            if (!in_band(g, i, K) || !in_band(g, j, K)) continue;
            double a = std::pow(g.freq(i / g.N), 2) + std::pow(g.freq(i % g.N), 2);
            double b = std::pow(g.freq(j / g.N), 2) + std::pow(g.freq(j % g.N), 2);
            double s = 0;
            for (size_t k = 0; k < lam_.size(); ++k) s += lam_[k] * U_[k][i] * U_[k][j];
            err = std::max(err, std::abs(s - psi(a + b)));
        }
    psi_err_ = err;
}

const PairList& QOperator::pairs() const
{
    if (pairs_.size() == 0) {
        pairs_ = make_pairs(grid_);
        q_.resize(pairs_.size());
        for (size_t i = 0; i < pairs_.size(); ++i) {
            Point p = pairs_.point(i);
            q_[i] = q_value(ell_, p[0], p[1], p[2], p[3]);
        }
    }
    return pairs_;
}

const std::vector<double>& QOperator::qvals() const
{
    pairs();
    return q_;
}

Field QOperator::apply(const Field& a, const Field& b) const
{
    Field A = project_dealiased(a), B = project_dealiased(b);
    const Grid& g = grid_;
    if (method_ == QMethod::Direct) {
        const PairList& pl = pairs();
        Field out(g, Rep::Frequency);
        for (size_t i = 0; i < pl.size(); ++i) out.v[pl.xi[i]] += q_[i] * A.v[pl.eta[i]] * B.v[pl.zeta[i]];
        out *= 1.0 / g.N;
        return out;
    }
    Field out = pointwise(A, B);
    Field Bp = B.phys();
    int n = g.size();
    const double* c = ell_.c;
    for (size_t k = 0; k < lam_.size(); ++k) {
        Field Ak(g, Rep::Frequency), LAk(g, Rep::Frequency);
        for (int i = 0; i < n; ++i) {
            if (U_[k][i] == 0.0) continue;
            Ak.v[i] = U_[k][i] * A.v[i];
            LAk.v[i] = (c[2] * g.freq(i / g.N) + c[3] * g.freq(i % g.N)) * Ak.v[i];
        }
        Field X = Ak.phys(), Y = LAk.phys();
        for (int i = 0; i < n; ++i) {
            X.v[i] *= Bp.v[i];
            Y.v[i] *= Bp.v[i];
        }
        X = X.freq();
        Y = Y.freq();
        for (int i = 0; i < n; ++i) {
            if (U_[k][i] == 0.0) continue;
            double lx = c[0] * g.freq(i / g.N) + c[1] * g.freq(i % g.N) - 1;
            out.v[i] += lam_[k] * U_[k][i] * (lx * X.v[i] + Y.v[i]);
        }
    }
    return project_dealiased(out);
}

}
