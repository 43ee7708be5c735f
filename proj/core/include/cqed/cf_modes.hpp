// cf_modes.hpp — Quasi-bound (constant-flux) resonances of the open
// resonator: complex eigenfrequencies nu_n - i*kappa_n of the outgoing-wave
// transcendental equation, plus an argument-principle root counter.

#pragma once

#include <complex>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::cf {

using complexd = std::complex<double>;

struct CFResonance {
    int n = 0;             // 0 for the zero-lineage mode, then 1, 2, ...
    double nu_n = 0.0;     // oscillation frequency, >= 0
    double kappa_n = 0.0;  // decay rate, > 0 for an open resonator (n >= 1)
    double residual = 0.0; // |F(root)| normalized by the term magnitudes
};

// Characteristic function of the quasi-bound eigenproblem, normalized by
// e^{2 i w} so it stays bounded in the lower half-plane:
//   F(w) = [1 - A B E] + (i/2) chi_s w (1 + A Ea)(1 + B Eb),
// A = 1-2i chi_L w, B = 1-2i chi_R w, Ea = e^{-2iw x0}, Eb = e^{-2iw(1-x0)},
// E = Ea*Eb. Roots coincide with those of the unnormalized equation.
complexd characteristic(const CircuitParams& p, complexd omega);
complexd characteristic_derivative(const CircuitParams& p, complexd omega);

// Scale used to normalize residuals (sum of term magnitudes at omega).
double characteristic_scale(const CircuitParams& p, complexd omega);

// The count+1 resonances with smallest |Re|, n = 0 ... count. The n = 0 entry
// is the zero-frequency lineage root (exactly omega = 0 for this circuit).
// Throws on Newton failure or a root escaping the lower half-plane.
std::vector<CFResonance> resonances(const CircuitParams& p, int count);

// Number of roots strictly inside the rectangle [lo, hi] by numerical
// winding of arg F along the contour (argument principle).
int count_in_rectangle(const CircuitParams& p, complexd lo, complexd hi);

} // namespace cqed::cf
