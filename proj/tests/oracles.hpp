// oracles.hpp — Test-only independent reference computations: fine-scan
// bisection root finding, weighted-quadrature orthonormality, the analytic
// two-oscillator diagonalization, and oscillatory-integral references. None
// of these share code with the implementation paths they check.

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Roots of f on (0, hi] by sign-change scanning with `steps` samples per unit
// followed by bisection. Deliberately brute force.
inline std::vector<double> scan_roots(const std::function<double(double)>& f,
                                      double hi, int steps_per_unit = 400)
{
    std::vector<double> roots;
    const double h = 1.0 / steps_per_unit;
    double a = 1e-9, fa = f(a);
    for (double b = h; b <= hi; b += h) {
        double fb = f(b);
        if (fa == 0.0) roots.push_back(a);
        if (fa * fb < 0.0) {
            double lo = a, hix = b;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hix);
                const double fm = f(mid);
                if (fm == 0.0) { lo = hix = mid; break; }
                if ((fm > 0) == (fa > 0)) lo = mid; else hix = mid;
            }
            roots.push_back(0.5 * (lo + hix));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

// Weighted inner product of two functions over [0,1] with the delta term at
// x0: integral(f g) + chi_s f(x0) g(x0).
inline double weighted_inner(const std::function<double(double)>& f,
                             const std::function<double(double)>& g,
                             double chi_s, double x0)
{
    using boost::math::quadrature::gauss_kronrod;
    auto prod = [&](double x) { return f(x) * g(x); };
    double integral = 0.0;
    if (x0 > 0.0)
        integral += gauss_kronrod<double, 31>::integrate(prod, 0.0, x0, 15, 1e-12);
    integral += gauss_kronrod<double, 31>::integrate(prod, x0, 1.0, 15, 1e-12);
    return integral + chi_s * f(x0) * g(x0);
}

// Exact eigenfrequencies of the two-oscillator system
//   diag(wj^2, w1^2) + offdiag 2 g sqrt(wj w1).
struct TwoMode {
    double beta_minus, beta_plus;
};

inline TwoMode two_mode(double omega_j, double omega_1, double g)
{
    const double a = omega_j * omega_j, d = omega_1 * omega_1;
    const double c = 2.0 * g * std::sqrt(omega_j * omega_1);
    const double mean = 0.5 * (a + d);
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + c * c);
    if (mean - disc <= 0.0) throw std::runtime_error("two_mode: unstable");
    return {std::sqrt(mean - disc), std::sqrt(mean + disc)};
}

// Reference for the Wigner-Weisskopf time kernel integral
//   J(tau) = int_0^inf 2 w e^{-i w tau} / (chi_s^2 (w^2 + a^2)) dw,
// done by per-period panels up to a large cutoff plus the leading
// integration-by-parts tail. Slow but independent of the E1 closed form.
inline std::complex<double> ww_kernel_integral(double chi_s, double tau, double cutoff = 3e4)
{
    using boost::math::quadrature::gauss_kronrod;
    const double a2 = (1.0 + chi_s) / (chi_s * chi_s);
    auto re = [&](double w) {
        return 2.0 * w / (chi_s * chi_s * (w * w + a2)) * std::cos(w * tau);
    };
    auto im = [&](double w) {
        return -2.0 * w / (chi_s * chi_s * (w * w + a2)) * std::sin(w * tau);
    };
    const double period = 2.0 * 3.14159265358979323846 / tau;
    const double panel = std::min(period, 50.0);
    double sr = 0.0, si = 0.0;
    for (double lo = 0.0; lo < cutoff; lo += panel) {
        const double hi = std::min(lo + panel, cutoff);
        sr += gauss_kronrod<double, 15>::integrate(re, lo, hi, 10, 1e-12);
        si += gauss_kronrod<double, 15>::integrate(im, lo, hi, 10, 1e-12);
    }
    // tail: integrand ~ (2/chi_s^2) e^{-i w tau}/w for w >> a
    const std::complex<double> I{0.0, 1.0};
    const std::complex<double> tail =
        (2.0 / (chi_s * chi_s)) * std::exp(-I * cutoff * tau) / (I * tau * cutoff);
    return {sr + tail.real(), si + tail.imag()};
}

} // namespace oracle
