#include "cqed/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cqed/cc_modes.hpp"
#include "cqed/cf_modes.hpp"

namespace cqed::charfn {

namespace {

constexpr complexd I{0.0, 1.0};

} // namespace

complexd CharacteristicFunction::evaluate(complexd s) const
{
    const auto& d = *data_;
    const complexd s2 = s * s;
    complexd sum{0.0, 0.0};
    for (std::size_t n = 0; n < d.weight.size(); ++n)
        sum += d.weight[n] / (s2 + d.two_kappa[n] * s + d.omega2[n]);
    complexd bracket = 1.0 - sum - d.rem0;
    if (d.tail == TailMode::sum_rule)
        bracket += (s2 + 2.0 * d.kappa_hat * s) * d.rem1;
    const complexd value = s2 + omega_j_ * omega_j_ * bracket;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw std::runtime_error("charfn: evaluation point collides with a bare modal pole");
    return value;
}

complexd CharacteristicFunction::evaluate_without(std::size_t skip, complexd s) const
{
    const auto& d = *data_;
    const complexd s2 = s * s;
    complexd sum{0.0, 0.0};
    for (std::size_t n = 0; n < d.weight.size(); ++n) {
        if (n == skip) continue;
        sum += d.weight[n] / (s2 + d.two_kappa[n] * s + d.omega2[n]);
    }
    complexd bracket = 1.0 - sum - d.rem0;
    if (d.tail == TailMode::sum_rule)
        bracket += (s2 + 2.0 * d.kappa_hat * s) * d.rem1;
    return s2 + omega_j_ * omega_j_ * bracket;
}

complexd CharacteristicFunction::derivative(complexd s) const
{
    const auto& d = *data_;
    const complexd s2 = s * s;
    complexd sum{0.0, 0.0};
    for (std::size_t n = 0; n < d.weight.size(); ++n) {
        const complexd den = s2 + d.two_kappa[n] * s + d.omega2[n];
        sum += d.weight[n] * (2.0 * s + d.two_kappa[n]) / (den * den);
    }
    complexd db = sum;  // -d(bracket)/ds contribution from the sum has + sign here
    complexd deriv = 2.0 * s + omega_j_ * omega_j_ * db;
    if (d.tail == TailMode::sum_rule)
        deriv += omega_j_ * omega_j_ * (2.0 * s + 2.0 * d.kappa_hat) * d.rem1;
    return deriv;
}

std::shared_ptr<const ModalData> build_modal_data(const CircuitParams& p, int truncation,
                                                  TailMode tail, bool lossless)
{
    p.validate();
    if (truncation < 1) throw std::invalid_argument("charfn: truncation must be >= 1");
    const double chi_s = p.chi_s();
    const double g2cj = p.gamma() * p.gamma() * p.chi_j;  // equals gamma*chi_s without override
    if (chi_s == 0.0) tail = TailMode::none;

    auto d = std::make_shared<ModalData>();
    d->truncation = truncation;
    d->tail = tail;
    d->gamma = p.gamma();

    // CC roots, extended past the truncation for the tail moment
    const int ext = (tail == TailMode::sum_rule)
                        ? std::max(8 * truncation, 4096)
                        : truncation;
    const auto omegas = cc::eigenfrequencies(p, ext);
    d->omega2.resize(truncation);
    d->weight.resize(truncation);
    std::vector<double> phi2(ext);
    for (int n = 0; n < ext; ++n) {
        const double phi = cc::mode_amplitude_at_x0(p, omegas[n]);
        phi2[n] = phi * phi;
    }
    for (int n = 0; n < truncation; ++n) {
        d->omega2[n] = omegas[n] * omegas[n];
        d->weight[n] = g2cj * phi2[n] * d->omega2[n];
    }

    d->two_kappa.assign(truncation, 0.0);
    if (!lossless && (p.chi_R > 0.0 || p.chi_L > 0.0)) {
        // open case: the oscillator quadratic (s - z_n)(s - z_n*) is built
        // from the quasi-bound root, z_n = -kappa_n - i nu_n, so the bare
        // poles of the sum sit exactly at the resonator resonances; the
        // weight keeps w_n/|omega_n|^2 = gamma^2 chi_j phi_n^2 and with it
        // the completeness remainder below
        const auto res = cf::resonances(p, truncation);
        for (int n = 0; n < truncation; ++n) {
            const double nu = res[n + 1].nu_n, kappa = res[n + 1].kappa_n;
            d->omega2[n] = nu * nu + kappa * kappa;
            d->weight[n] = g2cj * phi2[n] * d->omega2[n];
            d->two_kappa[n] = 2.0 * kappa;
        }
        d->kappa_hat = res[truncation].kappa_n;
    }

    if (tail == TailMode::sum_rule) {
        // completeness: sum over all modes (zero mode included) of phi^2 is 1/chi_s
        double head = 0.0;
        for (int n = 0; n < truncation; ++n) head += phi2[n];
        d->rem0 = g2cj * (1.0 / chi_s - 1.0 / (1.0 + chi_s) - head);
        // 1/omega^2 moment of the remainder: explicit out to `ext`, then the
        // last-octave Richardson estimate of the rest (terms fall like n^-4)
        double r1 = 0.0, oct = 0.0;
        for (int n = truncation; n < ext; ++n) {
            const double t = phi2[n] / (omegas[n] * omegas[n]);
            r1 += t;
            if (n >= ext / 2) oct += t;
        }
        d->rem1 = g2cj * (r1 + oct / 3.0);
    }
    return d;
}

CharacteristicFunction build(const CircuitParams& p, int truncation, TailMode tail)
{
    return {build_modal_data(p, truncation, tail, false), p.omega_j};
}

CharacteristicFunction build_lossless(const CircuitParams& p, int truncation, TailMode tail)
{
    return {build_modal_data(p, truncation, tail, true), p.omega_j};
}

complexd find_pole(const CharacteristicFunction& f, complexd seed, int max_iterations)
{
    complexd s = seed;
    const double scale = std::max(1.0, std::abs(seed));
    for (int it = 0; it < max_iterations; ++it) {
        const complexd F = f.evaluate(s);
        const complexd dF = f.derivative(s);
        complexd ds = F / dF;
        if (std::abs(ds) > 0.5 * scale) ds *= 0.5 * scale / std::abs(ds);
        s -= ds;
        if (std::abs(ds) < 1e-14 * std::max(1.0, std::abs(s))) return s;
    }
    throw std::runtime_error("charfn: Newton did not converge after "
                             + std::to_string(max_iterations) + " iterations");
}

complexd find_pole_homotopy(const CharacteristicFunction& f, int steps)
{
    const auto& d = f.modal_data();
    complexd s{0.0, -f.omega_j()};
    for (int k = 1; k <= steps; ++k) {
        const double lambda2 = static_cast<double>(k) / steps;
        auto scaled = std::make_shared<ModalData>(d);
        for (auto& w : scaled->weight) w *= lambda2;
        scaled->rem0 *= lambda2;
        scaled->rem1 *= lambda2;
        const CharacteristicFunction fk(scaled, f.omega_j());
        s = find_pole(fk, s);
    }
    return s;
}

QubitPole qubit_pole_fixed(const CharacteristicFunction& f, complexd seed, int max_iterations)
{
    complexd s = find_pole(f, seed, max_iterations);
    if (s.imag() > 0.0) s = std::conj(s);  // report the lower-half member
    QubitPole q;
    q.p_j = s;
    q.alpha_j = -s.real();
    q.beta_j = -s.imag();
    q.lamb_shift = q.beta_j - f.omega_j();
    q.residual = std::abs(f.evaluate(s));
    q.n_used = f.truncation();
    return q;
}

QubitPole qubit_pole(const CircuitParams& p, const PoleOptions& opt)
{
    p.validate();
    const complexd seed = -I * p.omega_j * std::sqrt(1.0 - p.gamma());
    // escalation ladder with the pole-drift stopping rule; a rung where
    // Newton fails counts as unconverged and escalates further
    int N = opt.initial_truncation;
    bool have_prev = false;
    QubitPole prev;
    try {
        prev = qubit_pole_fixed(build(p, N, opt.tail), seed, opt.max_iterations);
        have_prev = true;
    } catch (const std::runtime_error&) {
    }
    while (2 * N <= opt.max_truncation) {
        N *= 2;
        try {
            QubitPole next = qubit_pole_fixed(build(p, N, opt.tail), seed, opt.max_iterations);
            if (have_prev && std::abs(next.p_j - prev.p_j) < opt.drift_tol * p.omega_j) {
                next.n_used = N;
                return next;
            }
            prev = next;
            have_prev = true;
        } catch (const std::runtime_error&) {
            have_prev = false;
        }
    }
    throw std::runtime_error(
        "charfn: truncation failure, pole drift above tolerance at the maximum mode count "
        "(divergent modal sum; chi_s = 0 has no convergent pole)");
}

std::vector<complexd> resonator_poles(const CharacteristicFunction& f, int count,
                                      complexd qubit_pole_hint)
{
    const auto& d = f.modal_data();
    if (count > static_cast<int>(d.omega2.size()))
        throw std::invalid_argument("resonator_poles: count exceeds the truncation");
    std::vector<complexd> out;
    out.reserve(count);
    for (int n = 0; n < count; ++n) {
        const double kappa = 0.5 * d.two_kappa[n];
        const double om = std::sqrt(d.omega2[n]);
        const double osc = std::sqrt(std::max(om * om - kappa * kappa, 0.0));
        const complexd z{-kappa, -osc};
        // first-order location of the zero near the bare root: the background
        // (every other term) balances the diverging n-th term, which keeps the
        // seed inside the narrow pole-zero basin at weak coupling
        const complexd background = f.evaluate_without(n, z);
        complexd shift = d.weight[n] * f.omega_j() * f.omega_j()
                       / (background * (z - std::conj(z)));
        if (std::abs(shift) > 0.3) shift *= 0.3 / std::abs(shift);
        complexd s = find_pole(f, z + shift);
        if (s.imag() > 0.0) s = std::conj(s);
        // reject duplicates (converged onto the qubit pole or a neighbor)
        bool dup = std::abs(s - qubit_pole_hint) < 1e-9;
        for (const complexd& q : out) dup = dup || std::abs(s - q) < 1e-9;
        if (!dup) out.push_back(s);
    }
    return out;
}

std::vector<SweepRow> sweep_qubit_frequency(const CircuitParams& p,
                                            const std::vector<double>& omega_j_grid,
                                            int truncation, int jobs, TailMode tail)
{
    p.validate();
    if (omega_j_grid.empty()) throw std::invalid_argument("sweep: empty grid");
    const auto data = build_modal_data(p, truncation, tail, false);
    const double gamma = p.gamma();
    std::vector<SweepRow> rows(omega_j_grid.size());

    // Each point is solved from the warm seed (previous pole) and the cold
    // seed -i omega_j sqrt(1-gamma). When the two land on different roots
    // (an avoided crossing reshuffled the branches), the coupling homotopy
    // arbitrates, keeping the labeling seed-independent.
    auto solve_point = [&](std::size_t i, complexd warm_seed) {
        SweepRow row;
        row.omega_j = omega_j_grid[i];
        try {
            CharacteristicFunction f(data, omega_j_grid[i]);
            const complexd cold_seed = -I * row.omega_j * std::sqrt(1.0 - gamma);
            complexd pole = find_pole(f, warm_seed);
            const complexd cold = find_pole(f, cold_seed);
            if (std::abs(pole - cold) > 1e-8 * std::max(1.0, std::abs(pole)))
                pole = find_pole_homotopy(f);
            const QubitPole q = qubit_pole_fixed(f, pole);
            row.alpha_j = q.alpha_j;
            row.beta_j = q.beta_j;
            row.lamb_shift = q.lamb_shift;
            row.residual = q.residual;
            row.n_used = truncation;
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    auto run_chunk = [&](std::size_t lo, std::size_t hi) {
        complexd seed = -I * omega_j_grid[lo] * std::sqrt(1.0 - gamma);
        for (std::size_t i = lo; i < hi; ++i) {
            rows[i] = solve_point(i, seed);
            if (rows[i].ok) {
                const double ratio = (i + 1 < hi) ? omega_j_grid[i + 1] / omega_j_grid[i] : 1.0;
                seed = complexd(-rows[i].alpha_j, -rows[i].beta_j * ratio);
            } else {
                seed = -I * omega_j_grid[std::min(i + 1, hi - 1)] * std::sqrt(1.0 - gamma);
            }
        }
    };

    const std::size_t n = omega_j_grid.size();
    const std::size_t nthreads = std::min<std::size_t>(std::max(jobs, 1), n);
    if (nthreads <= 1) {
        run_chunk(0, n);
        return rows;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = n * t / nthreads;
        const std::size_t hi = n * (t + 1) / nthreads;
        pool.emplace_back([&run_chunk, lo, hi]() { run_chunk(lo, hi); });
    }
    for (auto& th : pool) th.join();
    return rows;
}

} // namespace cqed::charfn
