#include "qnls/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>

namespace qnls {

namespace {

struct Plans {
    fftw_plan fwd, bwd;
};

std::mutex plan_mutex;

Plans plans_for(int N)
{
    static std::map<int, Plans> cache;
    std::lock_guard lock(plan_mutex);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<cd> scratch(static_cast<size_t>(N) * N);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans pl{fftw_plan_dft_2d(N, N, p, p, FFTW_FORWARD, flags),
             fftw_plan_dft_2d(N, N, p, p, FFTW_BACKWARD, flags)};
    cache.emplace(N, pl);
    return pl;
}

void transform(std::vector<cd>& v, int N, bool forward)
{
    Plans pl = plans_for(N);
    auto* p = reinterpret_cast<fftw_complex*>(v.data());
    fftw_execute_dft(forward ? pl.fwd : pl.bwd, p, p);
    double s = 1.0 / N;
    for (auto& z : v) z *= s;
}

void check_same(const Field& a, const Field& b)
{
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("field arithmetic: grid or representation mismatch");
}

}

Field Field::freq() const
{
    if (rep == Rep::Frequency) return *this;
    Field out = *this;
    transform(out.v, grid.N, true);
    out.rep = Rep::Frequency;
    return out;
}

Field Field::phys() const
{
    if (rep == Rep::Physical) return *this;
    Field out = *this;
    transform(out.v, grid.N, false);
    out.rep = Rep::Physical;
    return out;
}

Field& Field::operator+=(const Field& o)
{
    check_same(*this, o);
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

Field& Field::operator-=(const Field& o)
{
    check_same(*this, o);
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

Field& Field::operator*=(cd s)
{
    for (auto& z : v) z *= s;
    return *this;
}

// conj in physical space; in frequency space conj(F)(k) -> conj(F(-k)).
Field Field::conj() const
{
    Field out(grid, rep);
    if (rep == Rep::Physical) {
        for (size_t i = 0; i < v.size(); ++i) out.v[i] = std::conj(v[i]);
        return out;
    }
    int N = grid.N;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out(i, j) = std::conj((*this)((N - i) % N, (N - j) % N));
    return out;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cd s, Field a) { return a *= s; }

Field zeros(const Grid& g, Rep r) { return Field(g, r); }

Field from_function(const Grid& g, const std::function<cd(double, double)>& f)
{
    Field out(g, Rep::Physical);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) out(i, j) = f(g.coord(i), g.coord(j));
    return out;
}

Field from_spectrum(const Grid& g, const std::function<cd(double, double)>& fhat)
{
    Field out(g, Rep::Frequency);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) out(i, j) = fhat(g.freq(i), g.freq(j));
    return out;
}

Field single_mode(const Grid& g, int kx, int ky, cd amp)
{
    Field out(g, Rep::Frequency);
    out(g.index(kx), g.index(ky)) = amp;
    return out;
}

Field gaussian(const Grid& g, double eps, double w, double x0, double y0, double kx0, double ky0)
{
    return from_function(g, [&](double x, double y) {
        double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
        return eps * std::exp(-r2 / (2 * w * w)) * std::exp(cd(0, kx0 * x + ky0 * y));
    });
}

double l2(const Field& f)
{
    double s = 0;
    for (auto z : f.v) s += std::norm(z);
    return std::sqrt(s * f.grid.cell_area());
}

double linf(const Field& f)
{
    const Field p = f.phys();
    double m = 0;
    for (auto z : p.v) m = std::max(m, std::abs(z));
    return m;
}

double lp(const Field& f, double p)
{
    if (std::isinf(p)) return linf(f);
    const Field ph = f.phys();
    double s = 0;
    for (auto z : ph.v) s += std::pow(std::abs(z), p);
    return std::pow(s * f.grid.cell_area(), 1.0 / p);
}

Field apply_multiplier(const Field& f, const std::function<cd(double, double)>& m)
{
    Field out = f.freq();
    const Grid& g = out.grid;
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) out(i, j) *= m(g.freq(i), g.freq(j));
    return out;
}

Field propagate(const Field& f, double t)
{
    if (t == 0) return f;
    Field out = f.freq();
    const Grid& g = out.grid;
    for (int i = 0; i < g.N; ++i) {
        double a = g.freq(i);
        for (int j = 0; j < g.N; ++j) {
            double b = g.freq(j);
            out(i, j) *= std::polar(1.0, -t * (a * a + b * b));
        }
    }
    return out;
}

double boundary_mass_fraction(const Field& f)
{
    const Field p = f.phys();
    const Grid& g = p.grid;
    double edge = g.L / 2 - g.L / 8, tot = 0, near = 0;
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            double m = std::norm(p(i, j));
            tot += m;
            if (std::abs(g.coord(i)) >= edge || std::abs(g.coord(j)) >= edge) near += m;
        }
    return tot > 0 ? near / tot : 0.0;
}

double weighted_norm(const Field& f, int w, double p, const NormOptions& opt)
{
    if (w < 0 || w > 2) throw std::invalid_argument("weighted_norm: weight power must be 0, 1 or 2");
    const Field ph = f.phys();
    const Grid& g = ph.grid;
    if (w >= 1) {
        double frac = boundary_mass_fraction(ph);
        if (frac > opt.boundary_threshold)
            warn("weighted_norm: boundary contamination, mass fraction " + std::to_string(frac));
    }
    double acc = 0, mx = 0;
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            double x = g.coord(i), y = g.coord(j), r2 = x * x + y * y;
            double wt = w == 0 ? 1.0 : w == 1 ? std::sqrt(1 + r2) : r2;
            double a = wt * std::abs(ph(i, j));
            if (std::isinf(p))
                mx = std::max(mx, a);
            else
                acc += std::pow(a, p);
        }
    if (std::isinf(p)) return mx;
    return std::pow(acc * g.cell_area(), 1.0 / p);
}

Field times_x(const Field& f, int axis)
{
    Field ph = f.phys();
    const Grid& g = ph.grid;
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) ph(i, j) *= axis == 0 ? g.coord(i) : g.coord(j);
    return ph;
}

Field times_x2(const Field& f)
{
    Field ph = f.phys();
    const Grid& g = ph.grid;
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            double x = g.coord(i), y = g.coord(j);
            ph(i, j) *= x * x + y * y;
        }
    return ph;
}

// Snapshot layout (little-endian): 8-byte magic "QNLSFLD1", double L, int64 N,
// int32 rep (0 physical, 1 frequency), then N*N (re, im) double pairs in row-major order.
void save_snapshot(const Field& f, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path);
    os.write("QNLSFLD1", 8);
    double L = f.grid.L;
    int64_t N = f.grid.N;
    int32_t rep = f.rep == Rep::Frequency ? 1 : 0;
    os.write(reinterpret_cast<const char*>(&L), sizeof L);
    os.write(reinterpret_cast<const char*>(&N), sizeof N);
    os.write(reinterpret_cast<const char*>(&rep), sizeof rep);
    os.write(reinterpret_cast<const char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(cd)));
}

Field load_snapshot(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (std::string(magic, 8) != "QNLSFLD1") throw std::runtime_error("snapshot: bad magic in " + path);
    double L;
    int64_t N;
    int32_t rep;
    is.read(reinterpret_cast<char*>(&L), sizeof L);
    is.read(reinterpret_cast<char*>(&N), sizeof N);
    is.read(reinterpret_cast<char*>(&rep), sizeof rep);
    Field f(make_grid(L, static_cast<int>(N)), rep ? Rep::Frequency : Rep::Physical);
    is.read(reinterpret_cast<char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(cd)));
    if (!is) throw std::runtime_error("snapshot: truncated " + path);
    return f;
}

}
