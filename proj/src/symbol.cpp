#include "qnls/symbol.hpp"

#include "qnls/smooth.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qnls {

Symbol closed_symbol(std::string name, int arity, SymbolFn fn, ClassTag cls)
{
    Symbol s;
    s.name = std::move(name);
    s.arity = arity;
    s.kind = SymbolKind::Closed;
    s.fn = std::move(fn);
    s.cls = cls;
    return s;
}

Symbol constant_symbol(cd c, int arity)
{
    return closed_symbol("const", arity, [c](const Point&) { return c; }, {true, 0, 0, 0});
}

cd eval_pair(const Symbol& m, int eta, int zeta)
{
    const Grid& g = m.grid;
    int N = g.N;
    switch (m.kind) {
    case SymbolKind::Sampled:
        return m.table[static_cast<size_t>(eta) * N * N + zeta];
    case SymbolKind::Separable: {
        int ex = eta / N, ey = eta % N, zx = zeta / N, zy = zeta % N;
        int xi = ((ex + zx) % N) * N + (ey + zy) % N;
        cd s = 0;
        for (const auto& t : m.terms) {
            cd v = 1;
            if (!t.a.empty()) v *= t.a[xi];
            if (!t.b.empty()) v *= t.b[eta];
            if (!t.c.empty()) v *= t.c[zeta];
            s += v;
        }
        return s;
    }
    case SymbolKind::Closed:
        break;
    }
    throw std::logic_error("eval_pair: closed symbols need a lattice; use sampled_symbol");
}

double q_value(const LinearFunctional& l, double x1, double x2, double e1, double e2)
{
    double r = std::sqrt(x1 * x1 + x2 * x2 + e1 * e1 + e2 * e2);
    if (r >= 2) return 1.0;
    double lin = l(x1, x2, e1, e2);
    if (r <= 1) return lin;
    double s = smoothstep(r - 1);
    return (1 - s) * lin + s;
}

Symbol build_q(const LinearFunctional& l)
{
    if (l.c[0] == 0 && l.c[1] == 0 && l.c[2] == 0 && l.c[3] == 0)
        throw ConfigError("build_q: the linear part must be nonzero");
    return closed_symbol("q", 2, [l](const Point& p) { return cd(q_value(l, p[0], p[1], p[2], p[3])); },
                         {true, 1, 0, 0});
}

cd fd_derivative(const Symbol& m, const Point& p, const std::array<int, 6>& alpha, double h)
{
    int dims = 2 * m.arity;
    std::vector<std::pair<Point, double>> st{{p, 1.0}};
    for (int d = 0; d < dims; ++d) {
        int a = alpha[d];
        if (!a) continue;
        std::vector<std::pair<Point, double>> next;
        double binom = 1;
        for (int k = 0; k <= a; ++k) {
            if (k > 0) binom = binom * (a - k + 1) / k;
            double w = ((k % 2) ? -binom : binom) / std::pow(h, a);
            double off = (a / 2.0 - k) * h;
            for (const auto& [q, wq] : st) {
                Point r = q;
                r[d] += off;
                next.push_back({r, wq * w});
            }
        }
        st.swap(next);
    }
    cd s = 0;
    for (const auto& [q, w] : st) s += w * m(q);
    return s;
}

namespace {

std::vector<std::array<int, 6>> multi_indices(int dims, int order)
{
    std::vector<std::array<int, 6>> out;
    std::array<int, 6> a{};
    std::function<void(int, int)> rec = [&](int d, int left) {
        if (d == dims) {
            out.push_back(a);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            a[d] = k;
            rec(d + 1, left - k);
        }
        a[d] = 0;
    };
    rec(0, order);
    return out;
}

double norm_of(const Point& p, int dims)
{
    double s = 0;
    for (int d = 0; d < dims; ++d) s += p[d] * p[d];
    return std::sqrt(s);
}

}

std::vector<Point> shell_samples(int arity, double r, int count, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    int dims = 2 * arity;
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) {
        Point p{};
        for (int d = 0; d < dims; ++d) p[d] = nd(rng);
        double n = norm_of(p, dims);
        for (int d = 0; d < dims; ++d) p[d] *= r / n;
        out.push_back(p);
    }
    return out;
}

CmReport cm_norm(const Symbol& m, int order, const std::vector<Point>& samples)
{
    int dims = 2 * m.arity;
    auto alphas = multi_indices(dims, order);
    CmReport rep;
    std::vector<double> by_level;
    for (const auto& p : samples) {
        double r = norm_of(p, dims), l1 = 0;
        for (int d = 0; d < dims; ++d) l1 += std::abs(p[d]);
        double h = 1e-3 * r;
        double best = 0;
        for (const auto& a : alphas) {
            int n = 0;
            for (int d = 0; d < dims; ++d) n += a[d];
            best = std::max(best, std::pow(l1, n) * std::abs(fd_derivative(m, p, a, h)));
        }
        rep.value = std::max(rep.value, best);
        by_level.push_back(best);
    }
    rep.per_level = by_level;
    return rep;
}

ClassReport check_class(const Symbol& m, int k, int kp, double t, int order, double cap)
{
    int dims = 2 * m.arity;
    auto alphas = multi_indices(dims, order);
    ClassReport rep;
    auto sweep = [&](double r, int kk) {
        double C = 0;
        for (const auto& p : shell_samples(m.arity, r, 12, static_cast<unsigned>(1000 * r) + 7)) {
            for (const auto& a : alphas) {
                int n = 0;
                for (int d = 0; d < dims; ++d) n += a[d];
                double v = std::abs(fd_derivative(m, p, a, 1e-3 * r));
                C = std::max(C, v / std::pow(r, kk - n));
            }
        }
        return C;
    };
    double rlo = t > 0 ? 1.0 / std::sqrt(t) : std::ldexp(1.0, -12);
    for (double r = rlo; r <= 2.0 + 1e-12; r *= std::sqrt(2.0)) rep.C_inner = std::max(rep.C_inner, sweep(r, k));
    for (double r = 2.0; r <= 64.0; r *= std::sqrt(2.0)) rep.C_outer = std::max(rep.C_outer, sweep(r, kp));
    if (t > 0) {
        for (double r = 0.05 / std::sqrt(t); r <= 0.5 / std::sqrt(t); r *= 1.5)
            for (const auto& p : shell_samples(m.arity, r, 12, 3))
                rep.max_inside_vanishing = std::max(rep.max_inside_vanishing, std::abs(m(p)));
    }
    rep.pass = std::isfinite(rep.C_inner) && std::isfinite(rep.C_outer) && rep.C_inner <= cap &&
               rep.C_outer <= cap && rep.max_inside_vanishing <= 1e-12;
    std::ostringstream os;
    os << "C_inner=" << rep.C_inner << " C_outer=" << rep.C_outer << " vanish=" << rep.max_inside_vanishing;
    rep.detail = os.str();
    return rep;
}

Symbol sampled_symbol(const Symbol& m, const Grid& g)
{
    if (m.arity != 2) throw std::invalid_argument("sampled_symbol: arity 2 only");
    if (m.kind != SymbolKind::Closed) return m;
    int N = g.N, n = N * N;
    Symbol s = m;
    s.kind = SymbolKind::Sampled;
    s.grid = g;
    s.table.assign(static_cast<size_t>(n) * n, 0);
    for (int e = 0; e < n; ++e)
        for (int z = 0; z < n; ++z) {
            int ex = e / N, ey = e % N, zx = z / N, zy = z % N;
            Point p{g.freq((ex + zx) % N), g.freq((ey + zy) % N), g.freq(ex), g.freq(ey), 0, 0};
            s.table[static_cast<size_t>(e) * n + z] = m.fn(p);
        }
    return s;
}

SeparableReport separable_approx(const Symbol& m, int rank, const Grid& g)
{
    if (m.arity != 2) throw std::invalid_argument("separable_approx: arity 2 only");
    Symbol smp = sampled_symbol(m, g);
    int n = g.N * g.N;
    Eigen::MatrixXcd M(n, n);
    for (int e = 0; e < n; ++e)
        for (int z = 0; z < n; ++z) M(e, z) = smp.table[static_cast<size_t>(e) * n + z];
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    SeparableReport rep;
    for (int i = 0; i < sv.size(); ++i) rep.singular_values.push_back(sv(i));
    double smax = sv.size() ? sv(0) : 0;
    int nr = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-13 * smax) ++nr;
    rep.numerical_rank = nr;
    int K = std::min(rank, nr);
    Symbol s;
    s.name = m.name + "_sep";
    s.arity = 2;
    s.kind = SymbolKind::Separable;
    s.grid = g;
    s.cls = m.cls;
    Eigen::MatrixXcd approx = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < K; ++k) {
        SepTerm t;
        t.b.resize(n);
        t.c.resize(n);
        for (int i = 0; i < n; ++i) {
            t.b[i] = svd.matrixU()(i, k) * sv(k);
            t.c[i] = std::conj(svd.matrixV()(i, k));
        }
        approx += svd.matrixU().col(k) * sv(k) * svd.matrixV().col(k).adjoint();
        s.terms.push_back(std::move(t));
    }
    double mx = M.cwiseAbs().maxCoeff();
    rep.error = rank >= nr ? 0.0 : (mx > 0 ? (M - approx).cwiseAbs().maxCoeff() / mx : 0.0);
    s.sep_error = rep.error;
    rep.symbol = std::move(s);
    return rep;
}

void write_manifest(const std::vector<Symbol>& syms, const std::string& path)
{
    std::ofstream os(path);
    os << "name,arity,representation,k,kprime,t,rank,error\n";
    for (const auto& s : syms) {
        const char* kind = s.kind == SymbolKind::Closed ? "closed" : s.kind == SymbolKind::Sampled ? "sampled" : "separable";
        os << s.name << ',' << s.arity << ',' << kind << ',';
        if (s.cls.set)
            os << s.cls.k << ',' << s.cls.kp << ',' << s.cls.t << ',';
        else
            os << ",,,";
        os << s.terms.size() << ',' << s.sep_error << '\n';
    }
}

}
