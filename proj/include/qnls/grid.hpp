#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnls {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Grid {
    double L = 2 * M_PI;
    int N = 8;

    double dk() const { return 2 * M_PI / L; }
    double dx() const { return L / N; }
    double cell_area() const { return dx() * dx(); }
    double max_freq() const { return M_PI * N / L; }
    int size() const { return N * N; }

    // lattice index (FFT order) -> signed wave number
    int wavenum(int i) const { return i < N / 2 ? i : i - N; }
    int index(int k) const { return ((k % N) + N) % N; }
    double freq(int i) const { return dk() * wavenum(i); }
    double coord(int i) const { return -L / 2 + i * dx(); }

    bool operator==(const Grid& o) const { return L == o.L && N == o.N; }
};

Grid make_grid(double L, int N);

// Warnings raised by operations (boundary contamination, range); collected, never thrown.
void warn(const std::string& msg);
int warning_count();
std::string last_warning();

}
