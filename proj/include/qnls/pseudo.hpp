#pragma once

#include "qnls/phase.hpp"
#include "qnls/symbol.hpp"

#include <stdexcept>

namespace qnls {

enum class Method { Direct, Separable, FactoredPhase };

struct CostGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApplyOptions {
    int max_direct_bilinear = 64;
    int max_direct_trilinear = 16;
    bool override_guard = false;
};

// Discrete pseudo-product: T_m(f, g)^[xi] = (1/N) sum_eta m(xi, eta) F[eta] G[xi - eta], all
// frequencies being lattice representatives, so m = 1 gives the pointwise product exactly.
Field apply_bilinear(const Symbol& m, const Field& f, const Field& g, Method method = Method::Direct,
                     const ApplyOptions& opt = {});

// T_{m e^{is phi}} for a quadratic phase.  FactoredPhase moves the oscillation onto propagators
// (exact for inputs whose sums do not wrap around the lattice); Direct evaluates m e^{is phi}.
Field apply_bilinear_phase(const Symbol& m, const PhaseSpec& ph, double s, const Field& f, const Field& g,
                           Method method, Method inner = Method::Direct, const ApplyOptions& opt = {});

// T_m(f1, f2, f3)^[xi] = (1/N^2) sum m(xi, eta, sigma) F1[sigma] F2[eta - sigma] F3[xi - eta].
Field apply_trilinear(const Symbol& m, const Field& f1, const Field& f2, const Field& f3,
                      const ApplyOptions& opt = {});
Field apply_trilinear_phase(const Symbol& m, const PhaseSpec& ph, double s, const Field& f1, const Field& f2,
                            const Field& f3, Method method, const ApplyOptions& opt = {});

// m(xi, eta, sigma) = mIII(xi, eta, sigma) mII_1(eta, xi) mII_2(eta, sigma).  When mIII does not
// depend on sigma the operator is two nested bilinear passes.
struct FlagSymbol {
    Symbol mIII;
    bool mIII_sigma_free = true;
    Symbol mII1;  // evaluated at (eta, xi)
    Symbol mII2;  // evaluated at (eta, sigma)

    cd operator()(const Point& p) const;
    Symbol as_trilinear() const;
};

enum class FlagPath { Direct, Nested };
Field apply_flag(const FlagSymbol& m, const Field& f1, const Field& f2, const Field& f3, FlagPath path,
                 const ApplyOptions& opt = {});

Symbol with_phase(const Symbol& m, const PhaseSpec& ph, double s);

// Pieces of f g: sum_j P_j f P_{<j-1} g, sum_j P_{<j-1} f P_j g and sum_{|j-k|<=1} P_j f P_k g,
// with P_{<j-1} the sum of the lower bands (the low remainder counts as band jmin - 1).
struct ParaPieces {
    Field high_low, low_high, high_high;
};
ParaPieces paraproduct_pieces(const Field& f, const Field& g);

// Step-6 model sums; variant 1: P_j(P_{j+J}f1 P_{j+J}f2) P_{<j-1}f3, variant 2:
// P_{<j-1}(...) P_j f3, variant 3: P_j(...) P_j f3.
Field model_operator(int variant, int J, const Field& f1, const Field& f2, const Field& f3);
// sum_k P_{<k-G}(P_k f1 P_k f2) P_{<k-G} f3
Field gapped_flag_operator(const Field& f1, const Field& f2, const Field& f3, int G);
// The trilinear symbol of the gapped operator, for direct quadrature.
Symbol gapped_flag_symbol(const Grid& g, int G);

Field pointwise(const Field& a, const Field& b);

}
