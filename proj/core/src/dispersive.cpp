#include "cqed/dispersive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqed/cc_modes.hpp"
#include "cqed/cf_modes.hpp"
#include "cqed/numerics.hpp"

namespace cqed::num {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t first, std::size_t last)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = first; i <= last && i < x.size(); ++i) {
        if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    if (m < 2) return 0.0;
    const double denom = m * sxx - sx * sx;
    return (m * sxy - sx * sy) / denom;
}

} // namespace cqed::num

namespace cqed::dispersive {

DispersiveSeries purcell_dispersive(const CircuitParams& p, int count, const Options& opt)
{
    p.validate();
    if (count < 1) throw std::invalid_argument("dispersive: count must be >= 1");

    const auto cc_modes = cc::modes(p, count);
    std::vector<double> nu(count), kappa(count);
    if (p.chi_R > 0.0 || p.chi_L > 0.0) {
        const auto cf_res = cf::resonances(p, count);
        for (int i = 0; i < count; ++i) {
            nu[i] = opt.use_closed_frequencies ? cc_modes[i].omega_n : cf_res[i + 1].nu_n;
            kappa[i] = cf_res[i + 1].kappa_n;
        }
    } else {
        for (int i = 0; i < count; ++i) { nu[i] = cc_modes[i].omega_n; kappa[i] = 0.0; }
    }

    DispersiveSeries series;
    series.terms.reserve(count);
    series.purcell_partial.reserve(count);
    series.lamb_partial.reserve(count);
    double ps = 0.0, ls = 0.0;
    for (int i = 0; i < count; ++i) {
        const double delta = p.omega_j - nu[i];
        if (std::abs(delta) < opt.guard_band)
            throw std::runtime_error("dispersive: omega_j within guard band of mode n="
                                     + std::to_string(i + 1));
        const double g = cc_modes[i].g_n;
        const double pt = (g / delta) * (g / delta) * kappa[i];
        const double lt = g * g / delta;
        series.terms.push_back({i + 1, g, delta, kappa[i], pt, lt});
        ps += pt; ls += lt;
        series.purcell_partial.push_back(ps);
        series.lamb_partial.push_back(ls);
    }

    // tail exponent over the top half-decade of mode index
    std::vector<double> idx(count), mag(count);
    for (int i = 0; i < count; ++i) {
        idx[i] = i + 1;
        mag[i] = std::abs(series.terms[i].purcell_term);
    }
    const auto first = static_cast<std::size_t>(count / std::pow(10.0, 0.5));
    series.tail_exponent = num::loglog_slope(idx, mag, first, count - 1);
    series.convergent = series.tail_exponent < -1.1;
    return series;
}

DispersiveSeries lamb_dispersive(const CircuitParams& p, int count, const Options& opt)
{
    return purcell_dispersive(p, count, opt);
}

} // namespace cqed::dispersive
