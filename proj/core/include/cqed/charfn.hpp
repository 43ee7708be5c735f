// charfn.hpp — The characteristic function D_j(s) of the reduced qubit
// dynamics in modal-sum form, its qubit-like and resonator-like complex
// poles, and qubit-frequency sweeps. The modal tail beyond the truncation is
// restored analytically through the completeness sum rule
// sum_n phi_n(x0)^2 = 1/chi_s (zero mode included), which makes the pole
// estimate converge like 1/N^3 instead of 1/N.
//
// Only the characteristic denominator is represented here; the Laplace
// numerator carrying the operator initial conditions is out of scope.

#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::charfn {

using complexd = std::complex<double>;

enum class TailMode {
    none,      // plain truncated sum
    sum_rule,  // truncated sum + analytic remainder (requires chi_s > 0)
};

// Frequency-independent modal data shared by every evaluation and sweep point.
struct ModalData {
    std::vector<double> omega2;     // omega_n^2 (CC eigenfrequencies)
    std::vector<double> two_kappa;  // 2 kappa_n from the CF roots (0 when closed)
    std::vector<double> weight;     // gamma^2 chi_j phi_n(x0)^2 omega_n^2
    double rem0 = 0.0;              // tail constant (sum-rule remainder)
    double rem1 = 0.0;              // tail 1/omega^2 moment
    double kappa_hat = 0.0;         // frozen kappa for the tail denominators
    double gamma = 0.0;
    int truncation = 0;
    TailMode tail = TailMode::none;
};

class CharacteristicFunction {
public:
    CharacteristicFunction(std::shared_ptr<const ModalData> data, double omega_j)
        : data_(std::move(data)), omega_j_(omega_j) {}

    complexd evaluate(complexd s) const;
    complexd derivative(complexd s) const;
    // evaluation with one modal term removed (regular at that bare root)
    complexd evaluate_without(std::size_t skip, complexd s) const;

    double omega_j() const { return omega_j_; }
    int truncation() const { return data_->truncation; }
    const ModalData& modal_data() const { return *data_; }
    CharacteristicFunction with_omega_j(double omega_j) const
    {
        return {data_, omega_j};
    }

private:
    std::shared_ptr<const ModalData> data_;
    double omega_j_;
};

// Modal data from the circuit: CC frequencies and amplitudes, CF decay rates
// (kappa_n = 0 when chi_R = chi_L = 0 or `lossless` is set).
std::shared_ptr<const ModalData> build_modal_data(const CircuitParams& p, int truncation,
                                                  TailMode tail = TailMode::sum_rule,
                                                  bool lossless = false);

CharacteristicFunction build(const CircuitParams& p, int truncation,
                             TailMode tail = TailMode::sum_rule);
CharacteristicFunction build_lossless(const CircuitParams& p, int truncation,
                                      TailMode tail = TailMode::none);

struct QubitPole {
    complexd p_j{};            // qubit-like pole, lower half-plane branch
    double alpha_j = 0.0;      // Purcell decay rate, -Re p_j
    double beta_j = 0.0;       // hybridized qubit frequency, -Im p_j
    double lamb_shift = 0.0;   // beta_j - omega_j
    double residual = 0.0;     // |D(p_j)|
    int n_used = 0;            // truncation that met the drift rule
};

struct PoleOptions {
    int initial_truncation = 500;
    int max_truncation = 20000;
    double drift_tol = 1e-8;   // |p(2N) - p(N)| < drift_tol * omega_j stops the ladder
    int max_iterations = 200;
    TailMode tail = TailMode::sum_rule;
};

// Complex Newton on a prebuilt function from a given seed.
complexd find_pole(const CharacteristicFunction& f, complexd seed, int max_iterations = 200);

// Canonical qubit-like branch selection: tracks the pole while the coupling
// weights are scaled from zero (bare qubit at -i omega_j) up to full
// strength. Used to resolve the labeling ambiguity near avoided crossings.
complexd find_pole_homotopy(const CharacteristicFunction& f, int steps = 8);

// Qubit-like pole with automatic truncation escalation; seeds at
// -i omega_j sqrt(1-gamma). Throws std::runtime_error on truncation failure
// (the chi_s = 0 divergence) or Newton non-convergence.
QubitPole qubit_pole(const CircuitParams& p, const PoleOptions& opt = {});

// Pole extraction at fixed modal data (no escalation).
QubitPole qubit_pole_fixed(const CharacteristicFunction& f, complexd seed,
                           int max_iterations = 200);

// The first `count` resonator-like poles, seeded from the bare roots
// z_n = -kappa_n - i sqrt(omega_n^2 - kappa_n^2), deduplicated against p_j.
std::vector<complexd> resonator_poles(const CharacteristicFunction& f, int count,
                                      complexd qubit_pole_hint = {0.0, 0.0});

struct SweepRow {
    double omega_j = 0.0;
    double alpha_j = 0.0;
    double beta_j = 0.0;
    double lamb_shift = 0.0;
    int n_used = 0;
    double residual = 0.0;
    bool ok = false;
    std::string error;
};

// Pole sweep over a qubit-frequency grid at fixed truncation. jobs == 1 walks
// the grid with warm-started seeds (continuous branch tracking); jobs > 1
// runs cold-seeded points in parallel.
std::vector<SweepRow> sweep_qubit_frequency(const CircuitParams& p,
                                            const std::vector<double>& omega_j_grid,
                                            int truncation, int jobs = 1,
                                            TailMode tail = TailMode::sum_rule);

} // namespace cqed::charfn
