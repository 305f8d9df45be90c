#include "qnls/pseudo.hpp"

#include "qnls/lp.hpp"

#include <cmath>
#include <string>

namespace qnls {

namespace {

void check_same(const Field& a, const Field& b)
{
    if (!(a.grid == b.grid)) throw std::invalid_argument("pseudo-product: inputs live on different grids");
}

void guard(int N, int limit, const ApplyOptions& opt, const char* what)
{
    if (N > limit && !opt.override_guard)
        throw CostGuard(std::string(what) + ": direct quadrature refused for N=" + std::to_string(N) +
                        " (limit " + std::to_string(limit) + ")");
}

Point pair_point(const Grid& g, int ex, int ey, int zx, int zy)
{
    int N = g.N;
    return {g.freq((ex + zx) % N), g.freq((ey + zy) % N), g.freq(ex), g.freq(ey), 0, 0};
}

Field bilinear_direct(const Symbol& m, const Field& f, const Field& g)
{
    const Grid& gr = f.grid;
    int N = gr.N, n = N * N;
    Field F = f.freq(), G = g.freq();
    Field out(gr, Rep::Frequency);
    std::vector<int> nzF, nzG;
    for (int i = 0; i < n; ++i) {
        if (F.v[i] != 0.0) nzF.push_back(i);
        if (G.v[i] != 0.0) nzG.push_back(i);
    }
    bool table = m.kind != SymbolKind::Closed;
    if (table && !(m.grid == gr)) throw std::invalid_argument("pseudo-product: symbol sampled on another grid");
    for (int e : nzF) {
        int ex = e / N, ey = e % N;
        for (int z : nzG) {
            int zx = z / N, zy = z % N;
            int xi = ((ex + zx) % N) * N + (ey + zy) % N;
            cd mv = table ? eval_pair(m, e, z) : m.fn(pair_point(gr, ex, ey, zx, zy));
            out.v[xi] += mv * F.v[e] * G.v[z];
        }
    }
    out *= 1.0 / N;
    return out;
}

Field bilinear_separable(const Symbol& m, const Field& f, const Field& g)
{
    if (m.kind != SymbolKind::Separable) throw std::invalid_argument("separable path needs a separable symbol");
    if (!(m.grid == f.grid)) throw std::invalid_argument("pseudo-product: symbol sampled on another grid");
    Field F = f.freq(), G = g.freq();
    Field out(f.grid, Rep::Frequency);
    for (const auto& t : m.terms) {
        Field a = F, b = G;
        if (!t.b.empty())
            for (size_t i = 0; i < a.v.size(); ++i) a.v[i] *= t.b[i];
        if (!t.c.empty())
            for (size_t i = 0; i < b.v.size(); ++i) b.v[i] *= t.c[i];
        Field p = pointwise(a, b);
        if (!t.a.empty())
            for (size_t i = 0; i < p.v.size(); ++i) p.v[i] *= t.a[i];
        out += p;
    }
    return out;
}

}

Field pointwise(const Field& a, const Field& b)
{
    check_same(a, b);
    Field x = a.phys(), y = b.phys();
    for (size_t i = 0; i < x.v.size(); ++i) x.v[i] *= y.v[i];
    return x.freq();
}

Field apply_bilinear(const Symbol& m, const Field& f, const Field& g, Method method, const ApplyOptions& opt)
{
    check_same(f, g);
    if (m.arity != 2) throw std::invalid_argument("apply_bilinear: symbol must be bilinear");
    switch (method) {
    case Method::Direct:
        if (m.kind == SymbolKind::Closed) guard(f.grid.N, opt.max_direct_bilinear, opt, "apply_bilinear");
        return bilinear_direct(m, f, g);
    case Method::Separable:
        return bilinear_separable(m, f, g);
    case Method::FactoredPhase:
        break;
    }
    throw std::invalid_argument("apply_bilinear: factored-phase needs a phase; use apply_bilinear_phase");
}

Symbol with_phase(const Symbol& m, const PhaseSpec& ph, double s)
{
    if (m.kind != SymbolKind::Closed) throw std::invalid_argument("with_phase: closed symbols only");
    if (m.arity != ph.arity) throw std::invalid_argument("with_phase: arity mismatch");
    auto fn = m.fn;
    return closed_symbol(m.name + "*e^{is" + ph.name() + "}", m.arity,
                         [fn, ph, s](const Point& p) { return fn(p) * std::polar(1.0, s * phase_eval(ph, p)); });
}

Field apply_bilinear_phase(const Symbol& m, const PhaseSpec& ph, double s, const Field& f, const Field& g,
                           Method method, Method inner, const ApplyOptions& opt)
{
    if (ph.arity != 2) throw std::invalid_argument("apply_bilinear_phase: quadratic phase expected");
    if (method == Method::FactoredPhase) {
        Field a = propagate(f, -ph.s[0] * s), b = propagate(g, -ph.s[1] * s);
        return propagate(apply_bilinear(m, a, b, inner, opt), s);
    }
    return apply_bilinear(with_phase(m, ph, s), f, g, Method::Direct, opt);
}

Field apply_trilinear(const Symbol& m, const Field& f1, const Field& f2, const Field& f3, const ApplyOptions& opt)
{
    check_same(f1, f2);
    check_same(f1, f3);
    if (m.arity != 3 || m.kind != SymbolKind::Closed)
        throw std::invalid_argument("apply_trilinear: closed trilinear symbol expected");
    const Grid& gr = f1.grid;
    int N = gr.N, n = N * N;
    guard(N, opt.max_direct_trilinear, opt, "apply_trilinear");
    Field F1 = f1.freq(), F2 = f2.freq(), F3 = f3.freq();
    auto nz = [n](const Field& F) {
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            if (F.v[i] != 0.0) v.push_back(i);
        return v;
    };
    std::vector<int> n1 = nz(F1), n2 = nz(F2), n3 = nz(F3);
    Field out(gr, Rep::Frequency);
    for (int a : n1) {
        int ax = a / N, ay = a % N;
        for (int b : n2) {
            int ex = (ax + b / N) % N, ey = (ay + b % N) % N;
            cd w = F1.v[a] * F2.v[b];
            for (int c : n3) {
                int xx = (ex + c / N) % N, xy = (ey + c % N) % N;
                Point p{gr.freq(xx), gr.freq(xy), gr.freq(ex), gr.freq(ey), gr.freq(ax), gr.freq(ay)};
                out.v[static_cast<size_t>(xx) * N + xy] += m.fn(p) * w * F3.v[c];
            }
        }
    }
    out *= 1.0 / (static_cast<double>(N) * N);
    return out;
}

Field apply_trilinear_phase(const Symbol& m, const PhaseSpec& ph, double s, const Field& f1, const Field& f2,
                            const Field& f3, Method method, const ApplyOptions& opt)
{
    if (ph.arity != 3) throw std::invalid_argument("apply_trilinear_phase: cubic phase expected");
    if (method == Method::FactoredPhase) {
        // phi = -|xi|^2 + s1|xi-eta|^2 + s2|eta-sigma|^2 + s3|sigma|^2
        Field a = propagate(f1, -ph.s[2] * s), b = propagate(f2, -ph.s[1] * s), c = propagate(f3, -ph.s[0] * s);
        return propagate(apply_trilinear(m, a, b, c, opt), s);
    }
    return apply_trilinear(with_phase(m, ph, s), f1, f2, f3, opt);
}

cd FlagSymbol::operator()(const Point& p) const
{
    Point a{p[2], p[3], p[0], p[1], 0, 0};
    Point b{p[2], p[3], p[4], p[5], 0, 0};
    return mIII(p) * mII1(a) * mII2(b);
}

Symbol FlagSymbol::as_trilinear() const
{
    FlagSymbol self = *this;
    return closed_symbol("flag", 3, [self](const Point& p) { return self(p); });
}

Field apply_flag(const FlagSymbol& m, const Field& f1, const Field& f2, const Field& f3, FlagPath path,
                 const ApplyOptions& opt)
{
    if (path == FlagPath::Direct) return apply_trilinear(m.as_trilinear(), f1, f2, f3, opt);
    if (!m.mIII_sigma_free)
        throw std::invalid_argument("apply_flag: nested path needs mIII independent of sigma");
    Field w = apply_bilinear(m.mII2, f1, f2, Method::Direct, opt);
    auto m3 = m.mIII.fn, m1 = m.mII1.fn;
    Symbol outer = closed_symbol("flag_outer", 2, [m3, m1](const Point& p) {
        Point full{p[0], p[1], p[2], p[3], 0, 0};
        Point sw{p[2], p[3], p[0], p[1], 0, 0};
        return m3(full) * m1(sw);
    });
    return apply_bilinear(outer, w, f3, Method::Direct, opt);
}

ParaPieces paraproduct_pieces(const Field& f, const Field& g)
{
    check_same(f, g);
    BandSplit a = split_bands(f), b = split_bands(g);
    int nb = static_cast<int>(a.bands.size());
    // index 0 is the low remainder, index i >= 1 is band jmin + i - 1
    std::vector<Field> A{a.low}, B{b.low};
    for (int i = 0; i < nb; ++i) {
        A.push_back(a.bands[i]);
        B.push_back(b.bands[i]);
    }
    int n = nb + 1;
    ParaPieces out{zeros(f.grid, Rep::Frequency), zeros(f.grid, Rep::Frequency), zeros(f.grid, Rep::Frequency)};
    Field lowA = zeros(f.grid, Rep::Frequency), lowB = zeros(f.grid, Rep::Frequency);
    // lowA after step i holds sum_{k <= i-2} A[k]
    for (int i = 0; i < n; ++i) {
        if (i >= 2) {
            lowA += A[i - 2];
            lowB += B[i - 2];
        }
        out.high_low += pointwise(A[i], lowB);
        out.low_high += pointwise(lowA, B[i]);
        for (int k = std::max(0, i - 1); k <= std::min(n - 1, i + 1); ++k) out.high_high += pointwise(A[i], B[k]);
    }
    return out;
}

Field model_operator(int variant, int J, const Field& f1, const Field& f2, const Field& f3)
{
    check_same(f1, f2);
    check_same(f1, f3);
    if (variant < 1 || variant > 3) throw std::invalid_argument("model_operator: variant must be 1, 2 or 3");
    DyadicRange dr = dyadic_range(f1.grid);
    Field out = zeros(f1.grid, Rep::Frequency);
    for (int j = dr.jmin; j <= dr.jmax; ++j) {
        int jj = j + J;
        if (jj < dr.jmin || jj > dr.jmax) continue;
        Field prod = pointwise(project_band(f1, jj), project_band(f2, jj));
        Field left = variant == 2 ? project_low(prod, j - 1) : project_band(prod, j);
        Field right = variant == 1 ? project_low(f3, j - 1) : project_band(f3, j);
        out += pointwise(left, right);
    }
    return out;
}

Field gapped_flag_operator(const Field& f1, const Field& f2, const Field& f3, int G)
{
    check_same(f1, f2);
    check_same(f1, f3);
    DyadicRange dr = dyadic_range(f1.grid);
    Field out = zeros(f1.grid, Rep::Frequency);
    // the low ball P_{<k-G} must contain the whole unresolved remainder P_{<jmin}
    for (int k = dr.jmin + G; k <= dr.jmax; ++k) {
        Field prod = pointwise(project_band(f1, k), project_band(f2, k));
        out += pointwise(project_low(prod, k - G), project_low(f3, k - G));
    }
    return out;
}

Symbol gapped_flag_symbol(const Grid& g, int G)
{
    DyadicRange dr = dyadic_range(g);
    double dk = g.dk();
    int N = g.N;
    // differences are taken back to their lattice representatives, as the products do
    auto wrap = [dk, N](double d) {
        long k = std::lround(d / dk);
        k = ((k + N / 2) % N + N) % N - N / 2;
        return k * dk;
    };
    return closed_symbol("gapped_flag", 3, [dr, G, wrap](const Point& p) {
        double eta = std::hypot(p[2], p[3]), sg = std::hypot(p[4], p[5]);
        double es = std::hypot(wrap(p[2] - p[4]), wrap(p[3] - p[5]));
        double xe = std::hypot(wrap(p[0] - p[2]), wrap(p[1] - p[3]));
        double s = 0;
        for (int k = dr.jmin + G; k <= dr.jmax; ++k) {
            double a = std::ldexp(1.0, -k), b = std::ldexp(1.0, G - k);
            s += lp_theta(sg * a) * lp_theta(es * a) * lp_low(eta * b) * lp_low(xe * b);
        }
        return cd(s);
    });
}

}
