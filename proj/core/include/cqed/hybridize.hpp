// hybridize.hpp — Normal modes of the lossless linear qubit-resonator system
// and the leading-order multi-scale (Kerr-type) correction to the qubit-like
// frequency for a given initial state.

#pragma once

#include <vector>

#include "cqed/params.hpp"

namespace cqed::hybrid {

struct HybridizedSpectrum {
    double beta_j = 0.0;           // qubit-like hybridized frequency
    std::vector<double> beta_n;    // resonator-like hybridized frequencies
    double u_j = 0.0;              // qubit-axis component of the qubit-like eigenvector
    std::vector<double> u_n;       // qubit-axis components of the resonator-like branches
    int qubit_branch = 0;          // eigenvalue index of the qubit-like branch
    double overlap_margin = 0.0;   // u_j^2 minus the runner-up overlap; small
                                   // values flag an ambiguous labeling

    // full spectrum and eigenvector data in eigen-sorted order
    std::vector<double> beta_all;      // ascending hybridized frequencies
    std::vector<double> bare_all;      // omega_j followed by the omega_n
    std::vector<std::vector<double>> vectors;  // orthonormal eigenvectors (columns)
};

// Diagonalizes the frequency-scaled dynamical matrix
//   diag(omega_j^2, omega_n^2) + off-diagonal 2 g_n sqrt(omega_j omega_n)
// and identifies the qubit-like branch by maximal overlap with the qubit
// axis. Throws on a negative eigenvalue (overcoupled instability).
HybridizedSpectrum diagonalize(const CircuitParams& p, int modes);

// Bare-basis quadrature second moments of the initial state. The defaults are
// the (|0>+|1>)/sqrt(2) qubit superposition and photon vacuum:
// <X_j^2> = <Y_j^2> = 2, <X_n^2> = <Y_n^2> = 1.
struct StateMoments {
    double qubit_x2 = 2.0;
    double qubit_y2 = 2.0;
    double mode_x2 = 1.0;   // applied uniformly unless per-mode values given
    double mode_y2 = 1.0;
    std::vector<double> mode_x2_per;  // optional per-mode overrides
    std::vector<double> mode_y2_per;

    static StateMoments plus_state_vacuum() { return {}; }
};

struct MsptCorrection {
    double beta_j = 0.0;            // uncorrected hybridized frequency
    double beta_j_corrected = 0.0;  // after the leading-order anharmonic shift
    double correction = 0.0;        // beta_j_corrected - beta_j, <= 0 for epsilon > 0
    double h_qubit = 0.0;           // <H_j(0)> in the hybridized qubit sector
};

// Leading-order frequency correction
//   beta_j - (sqrt(2) epsilon / 4) omega_j [u_j^4 <H_j> + sum_n 2 u_j^2 u_n^2 <H_n>],
// with <H_l> = (<X_l^2> + <Y_l^2>)/4 evaluated in the hybridized sectors by
// transforming the bare-state second moments. include_mode_sum toggles the
// resonator-sector sum (both conventions of the vacuum contribution).
MsptCorrection mspt_correction(const HybridizedSpectrum& spectrum, const CircuitParams& p,
                               const StateMoments& state = StateMoments::plus_state_vacuum(),
                               bool include_mode_sum = true);

} // namespace cqed::hybrid
