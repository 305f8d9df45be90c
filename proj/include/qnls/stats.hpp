#pragma once

#include "qnls/field.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qnls {

using Rng = std::mt19937_64;

// Independent complex normal coefficients on |k_1|, |k_2| <= K (all modes if K < 0).
Field random_band_field(const Grid& g, int K, Rng& rng);
// A sum of a few modulated Gaussian bumps of width comparable to `width`, well inside the box.
Field random_localized(const Grid& g, double width, Rng& rng);

double max_of(const std::vector<double>& v);
double min_of(const std::vector<double>& v);

}
