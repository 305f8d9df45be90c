#include "qnls/resonant_sets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace qnls {

std::pair<double, double> quadratic_range(const std::vector<double>& Q, int m, const double* lo,
                                          const double* hi)
{
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    int faces = 1;
    for (int i = 0; i < m; ++i) faces *= 3;
    for (int f = 0; f < faces; ++f) {
        int code[3], c = f, nfree = 0, freeidx[3];
        double x[3];
        for (int i = 0; i < m; ++i) {
            code[i] = c % 3;
            c /= 3;
            if (code[i] == 2)
                freeidx[nfree++] = i;
            else
                x[i] = code[i] == 0 ? lo[i] : hi[i];
        }
        if (nfree) {
            // stationary point of the form restricted to the free coordinates
            Eigen::MatrixXd A(nfree, nfree);
            Eigen::VectorXd b(nfree);
            for (int a = 0; a < nfree; ++a) {
                b(a) = 0;
                for (int j = 0; j < m; ++j)
                    if (code[j] != 2) b(a) -= Q[freeidx[a] * m + j] * x[j];
                for (int bb = 0; bb < nfree; ++bb) A(a, bb) = Q[freeidx[a] * m + freeidx[bb]];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) continue;
            Eigen::VectorXd sol = lu.solve(b);
            bool inside = true;
            for (int a = 0; a < nfree; ++a) {
                int i = freeidx[a];
                if (sol(a) < lo[i] || sol(a) > hi[i]) inside = false;
                x[i] = sol(a);
            }
            if (!inside) continue;
        }
        double v = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) v += Q[i * m + j] * x[i] * x[j];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {mn, mx};
}

namespace {

// Per-coordinate-axis restriction of the phase: phi(p) = sum_a x_a^T Q x_a with x_a = (xi_a, eta_a[, sigma_a]).
struct AxisForm {
    int m;
    std::vector<double> Q;   // m x m symmetric
    std::vector<double> B;   // (m-1) x m space-gradient matrix
    std::vector<double> ker; // unit kernel direction of B
};

Point embed(const double* x, int m, int axis)
{
    Point p{};
    for (int v = 0; v < m; ++v) p[2 * v + axis] = x[v];
    return p;
}

AxisForm axis_form(const PhaseSpec& ph)
{
    AxisForm f;
    int m = ph.arity;
    f.m = m;
    f.Q.assign(m * m, 0);
    auto val = [&](const double* x) { return phase_eval(ph, embed(x, m, 0)); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double a[3] = {0, 0, 0}, b[3] = {0, 0, 0}, c[3] = {0, 0, 0};
            a[i] += 1;
            a[j] += 1;
            b[i] = 1;
            c[j] = 1;
            // polarization: Q_ij = (phi(e_i + e_j) - phi(e_i) - phi(e_j)) / 2
            f.Q[i * m + j] = (val(a) - val(b) - val(c)) / 2;
        }
    auto vars = space_vars(ph);
    f.B.assign((m - 1) * m, 0);
    for (int j = 0; j < m; ++j) {
        double x[3] = {0, 0, 0};
        x[j] = 1;
        auto g = phase_grad(ph, vars, embed(x, m, 0));
        for (int r = 0; r < m - 1; ++r) f.B[r * m + j] = g[2 * r];
    }
    Eigen::MatrixXd Bm(m - 1, m);
    for (int r = 0; r < m - 1; ++r)
        for (int j = 0; j < m; ++j) Bm(r, j) = f.B[r * m + j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bm, Eigen::ComputeFullV);
    Eigen::VectorXd k = svd.matrixV().col(m - 1);
    f.ker.assign(k.data(), k.data() + m);
    return f;
}

struct AxisCell {
    double pmin, pmax;       // range of the axis form over the cell
    bool s_hit;              // kernel line meets the (relaxed) cell
    double tlo, thi;         // kernel parameter interval inside the cell
};

}

ResonantClouds resonant_sets(const PhaseSpec& ph, const SearchBox& box, double tol)
{
    ResonantClouds out{ph, box, {}, {}, {}};
    AxisForm af = axis_form(ph);
    int m = af.m, n = box.n;
    double h = box.h();
    int ncell = 1;
    for (int i = 0; i < m; ++i) ncell *= n;
    double qk = 0;  // axis form on the kernel direction
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) qk += af.Q[i * m + j] * af.ker[i] * af.ker[j];

    auto decode = [&](int c, int* idx) {
        for (int i = m - 1; i >= 0; --i) {
            idx[i] = c % n;
            c /= n;
        }
    };
    // relaxation radius added to every cell for the S test, per axis cell (scale taken at the full point)
    auto axis_cell = [&](int c, double slack) {
        int idx[3];
        decode(c, idx);
        double lo[3], hi[3];
        for (int i = 0; i < m; ++i) {
            double x = box.coord(idx[i]);
            lo[i] = x - h / 2;
            hi[i] = x + h / 2;
        }
        AxisCell ac;
        std::tie(ac.pmin, ac.pmax) = quadratic_range(af.Q, m, lo, hi);
        double tlo = -std::numeric_limits<double>::infinity(), thi = -tlo;
        for (int i = 0; i < m; ++i) {
            double k = af.ker[i], a = lo[i] - slack, b = hi[i] + slack;
            if (std::abs(k) < 1e-14) {
                if (a > 0 || b < 0) tlo = 1, thi = 0;
                continue;
            }
            double t1 = a / k, t2 = b / k;
            tlo = std::max(tlo, std::min(t1, t2));
            thi = std::min(thi, std::max(t1, t2));
        }
        ac.s_hit = tlo <= thi;
        ac.tlo = tlo;
        ac.thi = thi;
        return ac;
    };
    auto t2range = [](const AxisCell& a) {
        double lo = (a.tlo <= 0 && a.thi >= 0) ? 0.0 : std::min(a.tlo * a.tlo, a.thi * a.thi);
        return std::make_pair(lo, std::max(a.tlo * a.tlo, a.thi * a.thi));
    };

    double Rmax = box.R * std::sqrt(2.0 * m * box.axes);
    double slack_max = tol * (Rmax + 1);
    std::vector<AxisCell> cells(ncell);
    for (int c = 0; c < ncell; ++c) cells[c] = axis_cell(c, slack_max);

    auto point_of = [&](const int* cs) {
        Point p{};
        for (int a = 0; a < box.axes; ++a) {
            int idx[3];
            decode(cs[a], idx);
            for (int v = 0; v < m; ++v) p[2 * v + a] = box.coord(idx[v]);
        }
        return p;
    };
    auto norm = [&](const Point& p) {
        double s = 0;
        for (double x : p) s += x * x;
        return std::sqrt(s);
    };
    auto classify = [&](const int* cs) {
        Point p = point_of(cs);
        double scale = norm(p) + 1, tT = tol * scale * scale, sl = tol * scale;
        double pmin = 0, pmax = 0;
        bool s_all = true;
        for (int a = 0; a < box.axes; ++a) {
            pmin += cells[cs[a]].pmin;
            pmax += cells[cs[a]].pmax;
        }
        bool in_T = pmin <= tT && pmax >= -tT;
        // S: the kernel line meets the cell relaxed by tol*scale in every axis
        AxisCell acs[2];
        for (int a = 0; a < box.axes; ++a) {
            if (!cells[cs[a]].s_hit) {
                s_all = false;
                break;
            }
            acs[a] = slack_max > 0 ? axis_cell(cs[a], sl) : cells[cs[a]];
            if (!acs[a].s_hit) s_all = false;
        }
        if (in_T) out.T.push_back(p);
        if (!s_all) return;
        out.S.push_back(p);
        double lo = 0, hi = 0;
        for (int a = 0; a < box.axes; ++a) {
            auto [l, u] = t2range(acs[a]);
            lo += l;
            hi += u;
        }
        double rmin = std::min(qk * lo, qk * hi), rmax = std::max(qk * lo, qk * hi);
        if (rmin <= tT && rmax >= -tT) out.R.push_back(p);
    };

    if (box.axes == 1) {
        for (int c = 0; c < ncell; ++c) classify(&c);
    } else {
        int cs[2];
        for (cs[0] = 0; cs[0] < ncell; ++cs[0])
            for (cs[1] = 0; cs[1] < ncell; ++cs[1]) {
                // cheap rejection: neither T nor S possible
                double pmin = cells[cs[0]].pmin + cells[cs[1]].pmin;
                double pmax = cells[cs[0]].pmax + cells[cs[1]].pmax;
                double bound = tol * (Rmax + 1) * (Rmax + 1);
                bool maybeT = pmin <= bound && pmax >= -bound;
                bool maybeS = cells[cs[0]].s_hit && cells[cs[1]].s_hit;
                if (maybeT || maybeS) classify(cs);
            }
    }
    return out;
}

void write_clouds_csv(const ResonantClouds& c, const std::string& path, int t_stride)
{
    std::ofstream os(path);
    os << "xi1,xi2,eta1,eta2,sigma1,sigma2,abs_phi,abs_grad,class\n";
    os.precision(10);
    auto emit = [&](const Point& p, const char* cls) {
        for (int i = 0; i < 6; ++i) os << p[i] << ',';
        os << std::abs(phase_eval(c.phase, p)) << ',' << space_grad_norm(c.phase, p) << ',' << cls << '\n';
    };
    for (const auto& p : c.S) emit(p, "S");
    for (size_t i = 0; i < c.T.size(); i += std::max(1, t_stride)) emit(c.T[i], "T");
    for (const auto& p : c.R) emit(p, "R");
}

}
