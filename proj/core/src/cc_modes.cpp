#include "cqed/cc_modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqed::cc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Newton refinement of a bracketed root of the characteristic function.
// Falls back to bisection whenever a Newton step leaves the bracket.
double polish(double chi_s, double x0, double lo, double hi, double w)
{
    double flo = characteristic(chi_s, x0, lo);
    for (int it = 0; it < 100; ++it) {
        const double f = characteristic(chi_s, x0, w);
        const double df = characteristic_derivative(chi_s, x0, w);
        double step = (df != 0.0) ? f / df : 0.0;
        double next = w - step;
        if (!(next > lo && next < hi) || step == 0.0) {
            next = 0.5 * (lo + hi);
            step = w - next;
        }
        if (f == 0.0) return w;
        if ((f > 0) == (flo > 0)) { lo = w; flo = f; }
        else                      { hi = w; }
        w = next;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w))
            return w;
    }
    return w;
}

// Monotone bracketing form tan(w*x0) + tan(w*(1-x0)) + chi_s*w, strictly
// increasing between consecutive poles of the tangents.
double g_form(double chi_s, double x0, double w)
{
    return std::tan(w * x0) + std::tan(w * (1.0 - x0)) + chi_s * w;
}

double bisect_g(double chi_s, double x0, double lo, double hi)
{
    // g goes from -inf at lo+ to +inf at hi-
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g_form(chi_s, x0, mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-9 * (1.0 + hi)) break;
    }
    return polish(chi_s, x0, lo, hi, 0.5 * (lo + hi));
}

// Fast path for x0 = 0: exactly one root of tan(w) = -chi_s*w in every
// interval ((n-1/2)pi, n*pi) for chi_s > 0 (at n*pi for chi_s = 0).
std::vector<double> roots_x0_zero(double chi_s, int count)
{
    std::vector<double> roots;
    roots.reserve(count);
    for (int n = 1; n <= count; ++n) {
        const double npi = n * kPi;
        if (chi_s == 0.0) {
            roots.push_back(npi);
            continue;
        }
        // fixed-point seed w = n*pi - atan(chi_s*w), then guarded Newton
        double w = npi - std::atan(chi_s * npi);
        w = npi - std::atan(chi_s * w);
        w = npi - std::atan(chi_s * w);
        roots.push_back(polish(chi_s, 0.0, npi - 0.5 * kPi, npi, w));
    }
    return roots;
}

// General x0: merge the pole ladders of both tangent families and take one
// bracketed root per gap, plus roots sitting exactly on a pole (node modes,
// only possible when sin vanishes there too).
std::vector<double> roots_general(double chi_s, double x0, int count)
{
    std::vector<double> roots;
    roots.reserve(count);
    const double sa = kPi / x0;          // family-a pole spacing
    const double sb = kPi / (1.0 - x0);  // family-b pole spacing
    std::size_t ka = 0, kb = 0;
    double prev = 0.0;
    while (static_cast<int>(roots.size()) < count) {
        const double pa = (0.5 + ka) * sa;
        const double pb = (0.5 + kb) * sb;
        const double p = std::min(pa, pb);
        const double tol = 1e-9 * (1.0 + p);
        // consume every family pole that coincides with p (up to rounding)
        if (pa - p < tol) ++ka;
        if (pb - p < tol) ++kb;

        const double eps = 1e-11 * (1.0 + p);
        if (p - prev > 3.0 * eps) {
            const double lo = prev + eps, hi = p - eps;
            if (g_form(chi_s, x0, lo) < 0.0 && g_form(chi_s, x0, hi) > 0.0)
                roots.push_back(bisect_g(chi_s, x0, lo, hi));
        }
        if (static_cast<int>(roots.size()) >= count) break;

        // pole-as-root: requires sin(p) = 0, i.e. p an integer multiple of pi
        const double m = std::round(p / kPi);
        if (m >= 1.0 && std::abs(p - m * kPi) < tol
            && (roots.empty() || m * kPi - roots.back() > tol))
            roots.push_back(m * kPi);
        prev = p;
    }
    roots.resize(count);
    return roots;
}

// Left/right cosine coefficients of the piecewise eigenfunction; the
// degenerate node-mode branch replaces them by the derivative-continuity
// pair (-sin(w(1-x0)), sin(w*x0)).
struct ModeCoeffs {
    double A;     // coefficient of cos(w x) on [0, x0]
    double B;     // coefficient of cos(w (1-x)) on [x0, 1]
    double norm;  // overall normalization
    bool node;
};

ModeCoeffs mode_coeffs(double chi_s, double x0, double w)
{
    double A = std::cos(w * (1.0 - x0));
    double B = std::cos(w * x0);
    const bool node = std::abs(A) < 1e-9 && std::abs(B) < 1e-9;
    double chi_term = chi_s * A * A * B * B;
    if (node) {
        A = -std::sin(w * (1.0 - x0));
        B = std::sin(w * x0);
        chi_term = 0.0;
    }
    const double n2 = x0 * A * A + (1.0 - x0) * B * B + chi_term;
    return {A, B, std::sqrt(2.0 / n2), node};
}

} // namespace

double characteristic(double chi_s, double x0, double omega)
{
    return std::sin(omega)
         + chi_s * omega * std::cos(omega * x0) * std::cos(omega * (1.0 - x0));
}

double characteristic_derivative(double chi_s, double x0, double omega)
{
    const double a = omega * x0, b = omega * (1.0 - x0);
    const double ca = std::cos(a), cb = std::cos(b);
    return std::cos(omega)
         + chi_s * (ca * cb
                    - omega * (x0 * std::sin(a) * cb + (1.0 - x0) * ca * std::sin(b)));
}

std::vector<double> eigenfrequencies(const CircuitParams& p, int count)
{
    p.validate();
    if (count < 1) throw std::invalid_argument("eigenfrequencies: count must be >= 1");
    const double chi_s = p.chi_s();
    if (p.x0 == 0.0) return roots_x0_zero(chi_s, count);
    return roots_general(chi_s, p.x0, count);
}

double mode_amplitude_at_x0(const CircuitParams& p, double omega_n)
{
    const auto c = mode_coeffs(p.chi_s(), p.x0, omega_n);
    if (c.node) return 0.0;
    return std::abs(c.norm * c.A * c.B);
}

double coupling(const CircuitParams& p, double omega_n, double phi_at_x0)
{
    return 0.5 * p.gamma() * std::sqrt(p.chi_j)
         * std::sqrt(p.omega_j * omega_n) * phi_at_x0;
}

std::vector<CCMode> modes(const CircuitParams& p, int count)
{
    const auto omegas = eigenfrequencies(p, count);
    std::vector<CCMode> out(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double phi = mode_amplitude_at_x0(p, omegas[i]);
        out[i] = {static_cast<int>(i) + 1, omegas[i], phi, coupling(p, omegas[i], phi)};
    }
    return out;
}

double mode_function(const CircuitParams& p, double omega_n, double x)
{
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("mode_function: x must lie in [0, 1]");
    const auto c = mode_coeffs(p.chi_s(), p.x0, omega_n);
    // orient so that phi(x0) >= 0 (node modes keep their natural sign)
    double sign = 1.0;
    if (!c.node && c.A * c.B < 0.0) sign = -1.0;
    const double val = (x < p.x0) ? c.A * std::cos(omega_n * x)
                                  : c.B * std::cos(omega_n * (1.0 - x));
    return sign * c.norm * val;
}

double asymptote_large_n(int n)
{
    return n * kPi - 0.5 * kPi;
}

double phi2_x0_zero(double chi_s, double omega)
{
    return 2.0 / (1.0 + chi_s + chi_s * chi_s * omega * omega);
}

double sum_phi2(const CircuitParams& p, const std::vector<double>& omegas)
{
    double s = 0.0;
    for (double w : omegas) {
        const double phi = mode_amplitude_at_x0(p, w);
        s += phi * phi;
    }
    return s;
}

} // namespace cqed::cc
