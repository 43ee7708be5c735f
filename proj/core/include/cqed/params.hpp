// params.hpp — Unitless circuit parameters and derived capacitive ratios

#pragma once

#include <optional>

namespace cqed {

// All frequencies are in units of v_p/L, lengths in units of L, capacitances
// in units of the total resonator capacitance cL.
struct CircuitParams {
    double chi_R = 1e-3;    // right coupling capacitance C_R/cL, >= 0
    double chi_L = 1e-3;    // left coupling capacitance C_L/cL, >= 0
    double chi_j = 0.05;    // transmon capacitance C_j/cL, > 0
    double chi_g = 0.1;     // qubit-resonator coupling capacitance C_g/cL, >= 0
    double x0 = 0.0;        // qubit position in [0, 1); 0 means just inside the left end
    double omega_j = 3.0;   // transmon frequency, > 0
    double epsilon = 0.1;   // nonlinearity measure sqrt(E_c/E_j), >= 0

    // When set, the mode spectrum is computed with this series capacitance
    // instead of gamma()*chi_j while the coupling prefactor keeps using the
    // circuit gamma and chi_j. chi_s_override = 0 gives the gauge-violating
    // model with bare resonator modes; it is the knob behind the chi_s
    // families of the sweep tasks.
    std::optional<double> chi_s_override{};

    double gamma() const { return chi_g / (chi_g + chi_j); }           // C_g/(C_g+C_j)
    double chi_s_circuit() const { return gamma() * chi_j; }           // series capacitance
    double chi_s() const { return chi_s_override.value_or(chi_s_circuit()); }

    // throws std::invalid_argument on any out-of-range field
    void validate() const;
};

struct DerivedParams {
    double gamma = 0.0;
    double chi_s = 0.0;
};

// Validates and returns the derived capacitive ratios.
DerivedParams derive(const CircuitParams& p);

} // namespace cqed
