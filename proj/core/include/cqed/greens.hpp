// greens.hpp — Classical EM Green's function of the resonator by piecewise
// plane-wave boundary matching (open or closed ends), the closed-resonator
// spectral representation as a cross-check, memory-kernel samples, and the
// left-incident transmission spectrum.

#pragma once

#include <complex>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::greens {

using complexd = std::complex<double>;

struct GreensEvaluation {
    double x = 0.0;
    double x_prime = 0.0;
    complexd omega{};
    complexd value{};
    double wronskian_mag = 0.0;  // |W|; small values flag a near-resonant probe
};

// G(x, x', omega) with outgoing waves in both waveguides (chi_R/chi_L = 0
// degrades an end to a Neumann wall). Supports complex omega != 0.
GreensEvaluation evaluate(const CircuitParams& p, double x, double x_prime, complexd omega);

// Convenience: the value only.
complexd green_direct(const CircuitParams& p, double x, double x_prime, complexd omega);

// Closed-resonator variant (both ends Neumann) regardless of chi_R/chi_L.
complexd green_direct_closed(const CircuitParams& p, double x, double x_prime, complexd omega);

// Partial spectral sum over the zero mode plus the first N CC modes of the
// closed resonator. Rejects probes within 1e-6 of an eigenfrequency.
complexd green_spectral_closed(const CircuitParams& p, double x, double x_prime,
                               double omega, int modes);

// Memory-kernel integrand samples gamma*chi_s*omega^n_power*G(x0,x0,omega);
// n_power must be 1 or 2. Grid points at a spectral singularity are rejected.
std::vector<complexd> kernel_K(const CircuitParams& p, int n_power,
                               const std::vector<complexd>& omega_grid);

// |T(omega)|^2 for a left-incident unit wave; requires chi_R, chi_L > 0.
double transmission(const CircuitParams& p, double omega);
std::vector<double> transmission(const CircuitParams& p, const std::vector<double>& omega_grid);

} // namespace cqed::greens
