// cc_modes.hpp — Closed-resonator current-conserving (CC) eigenbasis:
// transcendental eigenfrequencies, mode amplitudes at the qubit position,
// light-matter couplings g_n, and large-n asymptotics.

#pragma once

#include <vector>

#include "cqed/params.hpp"

namespace cqed::cc {

struct CCMode {
    int n = 0;             // mode index, 1-based
    double omega_n = 0.0;  // eigenfrequency in units of v_p/L
    double phi_at_x0 = 0.0;// normalized mode amplitude at x0, >= 0 by convention
    double g_n = 0.0;      // light-matter coupling 0.5*gamma*sqrt(chi_j)*sqrt(omega_j*omega_n)*phi
};

// Characteristic function F(w) = sin(w) + chi_s*w*cos(w*x0)*cos(w*(1-x0))
// whose positive roots are the CC eigenfrequencies.
double characteristic(double chi_s, double x0, double omega);
double characteristic_derivative(double chi_s, double x0, double omega);

// First `count` positive eigenfrequencies, ascending. Bisection brackets every
// root between consecutive poles of tan(w*x0) + tan(w*(1-x0)); Newton polishes
// to machine precision. Roots that coincide with a pole (modes with a node at
// x0) are detected and included.
std::vector<double> eigenfrequencies(const CircuitParams& p, int count);

// Normalized |phi_n(x0)|; omega_n must be an eigenfrequency.
double mode_amplitude_at_x0(const CircuitParams& p, double omega_n);

// g_n from the circuit gamma, chi_j and omega_j; phi is mode_amplitude_at_x0.
double coupling(const CircuitParams& p, double omega_n, double phi_at_x0);

// Assembles the first `count` modes with amplitudes and couplings.
std::vector<CCMode> modes(const CircuitParams& p, int count);

// Normalized eigenfunction phi_n(x) on [0, 1], sign chosen so phi_n(x0) >= 0.
double mode_function(const CircuitParams& p, double omega_n, double x);

// Large-n asymptote of the eigenfrequencies for chi_s > 0: n*pi - pi/2.
double asymptote_large_n(int n);

// Squared amplitude 2/(1 + chi_s + chi_s^2 w^2) for the x0 = 0 geometry.
double phi2_x0_zero(double chi_s, double omega);

// Partial sum of phi_n(x0)^2 over the first `count` modes (used by the
// characteristic-function tail; the full sum including the zero mode is
// 1/chi_s by completeness).
double sum_phi2(const CircuitParams& p, const std::vector<double>& omegas);

} // namespace cqed::cc
