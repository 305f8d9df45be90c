#pragma once

namespace qnls {

// C-infinity step built from exp(-1/x): 0 for x <= 0, 1 for x >= 1.
double smoothstep(double x);
double smoothstep_deriv(double x);

// 1 on [0,1], 0 on [2,inf), smooth in between.
inline double unit_bump(double r) { return 1.0 - smoothstep(r - 1.0); }
inline double unit_bump_deriv(double r) { return -smoothstep_deriv(r - 1.0); }

// 0 on [0,1], 1 on [2,inf): the complement of unit_bump.
inline double rise(double x) { return smoothstep(x - 1.0); }

}
