#include "qnls/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qnls {

Field random_band_field(const Grid& g, int K, Rng& rng)
{
    std::normal_distribution<double> nd;
    Field f(g, Rep::Frequency);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            double a = nd(rng), b = nd(rng);
            if (K < 0 || (std::abs(g.wavenum(i)) <= K && std::abs(g.wavenum(j)) <= K)) f(i, j) = cd(a, b);
        }
    return f;
}

Field random_localized(const Grid& g, double width, Rng& rng)
{
    std::uniform_real_distribution<double> ud(-1, 1);
    std::normal_distribution<double> nd;
    Field f = zeros(g);
    int bumps = 3;
    for (int b = 0; b < bumps; ++b) {
        double x0 = ud(rng) * width, y0 = ud(rng) * width;
        double w = width * (0.5 + 0.5 * std::abs(ud(rng)));
        double kx = ud(rng) / width, ky = ud(rng) / width;
        cd amp(nd(rng), nd(rng));
        f += amp * gaussian(g, 1.0, w, x0, y0, kx, ky);
    }
    return f;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end()); }

}
