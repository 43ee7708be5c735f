// ww.hpp — Wigner-Weisskopf spontaneous emission for a qubit coupled to the
// 1D photonic continuum: memory kernel in time and Laplace domain, the exact
// Volterra evolution of the excited-state amplitude, the Markov rate, and the
// divergence of the flat (gauge-violating) coupling profile.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::ww {

using complexd = std::complex<double>;

enum class CouplingProfile {
    suppressed,  // |phi_k(x0)|^2 = 2/(1 + chi_s + chi_s^2 w^2)
    flat,        // |phi_k(x0)|^2 = flat_n2 (k-independent)
};

struct WwKernelSpec {
    CouplingProfile profile = CouplingProfile::suppressed;
    double gamma = 0.5;
    double chi_s = 0.1;
    double omega_j = 3.0;
    double omega_max = 1e3;  // quadrature cutoff, a numerical control only
    double flat_n2 = 2.0;    // N^2(x0) for the flat profile

    static WwKernelSpec from_params(const CircuitParams& p,
                                    CouplingProfile profile = CouplingProfile::suppressed,
                                    double omega_max = 1e3);

    double prefactor() const;          // gamma chi_s omega_j / (8 pi)
    double phi2(double omega) const;   // coupling profile |phi_k(x0)|^2
};

struct LaplaceResult {
    complexd value{};
    double doubling_change = 0.0;  // relative change under omega_max doubling
    bool converged = false;        // doubling_change below 1e-6
    std::string diagnostic;        // set when the doubling test fails (flat profile)
};

// K~(s) = int_0^inf K(tau) e^(-s tau) dtau evaluated as the omega integral
// over [0, omega_max] plus (suppressed profile) an analytic large-omega tail.
// For Re s < 0 the analytic continuation across the branch line is returned
// (the resonance sheet). Purely imaginary s gets the +1e-6 shift documented
// in the spec of the problem.
LaplaceResult kernel_laplace(const WwKernelSpec& spec, complexd s);

// K(tau) for tau > 0. The suppressed profile uses the exact closed form via
// exponential integrals (no cutoff); the flat profile uses the closed form of
// the truncated integral, which grows with omega_max.
complexd kernel_time(const WwKernelSpec& spec, double tau);

// K(0) with the cutoff in place; the flat profile grows like omega_max^2.
double kernel_k0(const WwKernelSpec& spec);

// Pole of 1/(s + K~(s)) near s = 0 (the resonance on the continuation sheet).
complexd laplace_pole(const WwKernelSpec& spec);

struct DecayResult {
    std::vector<double> t;
    std::vector<complexd> c;       // excited-state amplitude, c(0) = 1
    double step_check = 0.0;       // |c_h(T) - c_{h/2}(T)| from step halving
    std::string warning;           // set when step_check > 1e-4
};

// Volterra march of c'(t) = -int_0^t K(t-u) c(u) du on a uniform grid with
// second-order product-trapezoidal quadrature (kernel integrated exactly
// against the linear interpolant of c). Rejects the flat profile.
DecayResult decay_amplitude(const WwKernelSpec& spec, const std::vector<double>& t_grid,
                            bool check_step = true);

// Markov (golden-rule window) closed form gamma chi_s omega_j^2 N^2 / 2 with
// N^2 the flat amplitude or, for the suppressed profile, |phi(omega_j)|^2.
double markov_rate(const WwKernelSpec& spec);

// scaled exponential integrals used by the kernel closed form (exposed for
// verification against quadrature)
double e1_scaled(double x);  // e^x E_1(x), x > 0
double ei_scaled(double x);  // e^(-x) Ei(x), x > 0

} // namespace cqed::ww
