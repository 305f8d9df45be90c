#include "qnls/smooth.hpp"

#include <cmath>

namespace qnls {

namespace {
double mollifier(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }
double mollifier_deriv(double x) { return x > 0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }
}

double smoothstep(double x)
{
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    double a = mollifier(x), b = mollifier(1 - x);
    return a / (a + b);
}

double smoothstep_deriv(double x)
{
    if (x <= 0 || x >= 1) return 0.0;
    double a = mollifier(x), b = mollifier(1 - x);
    double da = mollifier_deriv(x), db = -mollifier_deriv(1 - x);
    double s = a + b;
    return (da * s - a * (da + db)) / (s * s);
}

}
