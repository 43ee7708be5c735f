// dispersive.hpp — Multimode dispersive-limit Purcell and Lamb sums with
// per-term diagnostics and a tail-exponent convergence verdict.

#pragma once

#include <string>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::dispersive {

struct DispersiveTerm {
    int n = 0;
    double g_n = 0.0;
    double delta_n = 0.0;       // omega_j - nu_n
    double kappa_n = 0.0;
    double purcell_term = 0.0;  // (g_n/delta_n)^2 kappa_n
    double lamb_term = 0.0;     // g_n^2/delta_n
};

struct DispersiveSeries {
    std::vector<DispersiveTerm> terms;
    std::vector<double> purcell_partial;  // running partial sums
    std::vector<double> lamb_partial;
    double tail_exponent = 0.0;           // OLS slope of log(term) vs log(n), top half-decade
    bool convergent = false;              // exponent < -1.1

    double purcell_total() const { return purcell_partial.empty() ? 0.0 : purcell_partial.back(); }
    double lamb_total() const { return lamb_partial.empty() ? 0.0 : lamb_partial.back(); }
};

struct Options {
    bool use_closed_frequencies = false;  // delta_n from CC omega_n instead of CF nu_n
    double guard_band = 1e-6;             // minimum allowed |omega_j - nu_n|
};

// Builds the first `count` terms of both sums. Throws std::runtime_error
// naming the offending mode if omega_j falls inside the guard band.
DispersiveSeries purcell_dispersive(const CircuitParams& p, int count, const Options& opt = {});

// Same series; returned for the Lamb-shift view of the data.
DispersiveSeries lamb_dispersive(const CircuitParams& p, int count, const Options& opt = {});

} // namespace cqed::dispersive
