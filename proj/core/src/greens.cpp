#include "cqed/greens.hpp"

#include <cmath>
#include <stdexcept>

#include "cqed/cc_modes.hpp"

namespace cqed::greens {

namespace {

constexpr complexd I{0.0, 1.0};

struct State {
    complexd u, up;
};

// advance a homogeneous solution (u'' + w^2 u = 0) by dx
State propagate(State s, complexd w, double dx)
{
    const complexd c = std::cos(w * dx), sn = std::sin(w * dx);
    return {s.u * c + s.up * sn / w, -s.u * w * sn + s.up * c};
}

// Right solution at x; when x <= x0 the chi_s jump has been crossed so the
// derivative is the x0^- side value.
State right_solution(const CircuitParams& p, complexd w, double x, bool closed)
{
    State s;
    if (closed || p.chi_R == 0.0) {
        s = {1.0, 0.0};
    } else {
        s = {1.0, I * w};                       // outgoing e^{i w (x-1)} at 1^+
        s.u += s.up / (p.chi_R * w * w);        // u(1^-) = u(1^+) + u'/(chi_R w^2)
    }
    const double x0 = p.x0, chi_s = p.chi_s();
    if (x <= x0) {
        if (x0 < 1.0) s = propagate(s, w, -(1.0 - x0));
        s.up += chi_s * w * w * s.u;
        if (x < x0) s = propagate(s, w, -(x0 - x));
    } else {
        s = propagate(s, w, -(1.0 - x));
    }
    return s;
}

// Left solution at x; the x0 jump (which sits at the wall for x0 = 0) is
// crossed for any x > x0, so the derivative at x == x0 is the x0^- value.
State left_solution(const CircuitParams& p, complexd w, double x, bool closed)
{
    State s;
    if (closed || p.chi_L == 0.0) {
        s = {1.0, 0.0};
    } else {
        s = {1.0, -I * w};                      // outgoing e^{-i w x} at 0^-
        s.u -= s.up / (p.chi_L * w * w);        // u(0^+) = u(0^-) - u'/(chi_L w^2)
    }
    const double x0 = p.x0, chi_s = p.chi_s();
    if (x > x0) {
        if (x0 > 0.0) s = propagate(s, w, x0);
        s.up -= chi_s * w * w * s.u;
        s = propagate(s, w, x - x0);
    } else {
        s = propagate(s, w, x);
    }
    return s;
}

GreensEvaluation assemble(const CircuitParams& p, double x, double xp, complexd w, bool closed)
{
    p.validate();
    if (w == complexd{0.0, 0.0})
        throw std::invalid_argument("greens: omega must be nonzero");
    if (x < 0.0 || x > 1.0 || xp < 0.0 || xp > 1.0)
        throw std::invalid_argument("greens: positions must lie in [0, 1]");

    const double a = std::min(x, xp), b = std::max(x, xp);
    const State uL = left_solution(p, w, a, closed);
    const State uR = right_solution(p, w, b, closed);
    // Wronskian with both solutions expressed on the same side of x0
    const State uLb = left_solution(p, w, b, closed);
    const State uRb = right_solution(p, w, b, closed);
    const complexd W = uLb.u * uRb.up - uLb.up * uRb.u;
    const double wmag = std::abs(W);
    if (!(wmag > 0.0) || !std::isfinite(wmag))
        throw std::runtime_error("greens: singular boundary-value problem (probe at a resonance)");
    return {x, xp, w, uL.u * uR.u / W, wmag};
}

} // namespace

GreensEvaluation evaluate(const CircuitParams& p, double x, double x_prime, complexd omega)
{
    return assemble(p, x, x_prime, omega, false);
}

complexd green_direct(const CircuitParams& p, double x, double x_prime, complexd omega)
{
    return assemble(p, x, x_prime, omega, false).value;
}

complexd green_direct_closed(const CircuitParams& p, double x, double x_prime, complexd omega)
{
    return assemble(p, x, x_prime, omega, true).value;
}

complexd green_spectral_closed(const CircuitParams& p, double x, double x_prime,
                               double omega, int modes)
{
    p.validate();
    if (modes < 1) throw std::invalid_argument("green_spectral_closed: modes must be >= 1");
    const auto omegas = cc::eigenfrequencies(p, modes);
    for (double wn : omegas)
        if (std::abs(omega - wn) < 1e-6)
            throw std::invalid_argument("green_spectral_closed: probe within 1e-6 of an eigenfrequency");

    const double chi_s = p.chi_s();
    // zero mode: constant 1/sqrt(1+chi_s) with eigenfrequency 0
    double sum = 1.0 / (1.0 + chi_s) / (omega * omega);
    for (double wn : omegas) {
        const double fx = cc::mode_function(p, wn, x);
        const double fxp = cc::mode_function(p, wn, x_prime);
        sum += fx * fxp / (omega * omega - wn * wn);
    }
    return {sum, 0.0};
}

std::vector<complexd> kernel_K(const CircuitParams& p, int n_power,
                               const std::vector<complexd>& omega_grid)
{
    if (n_power != 1 && n_power != 2)
        throw std::invalid_argument("kernel_K: n_power must be 1 or 2");
    const double pref = p.gamma() * p.chi_s();
    std::vector<complexd> out;
    out.reserve(omega_grid.size());
    for (complexd w : omega_grid) {
        const complexd g = green_direct(p, p.x0, p.x0, w);
        complexd f = pref * w * g;
        if (n_power == 2) f *= w;
        out.push_back(f);
    }
    return out;
}

double transmission(const CircuitParams& p, double omega)
{
    p.validate();
    if (p.chi_R <= 0.0 || p.chi_L <= 0.0)
        throw std::invalid_argument("transmission: requires chi_R, chi_L > 0");
    const complexd w{omega, 0.0};
    // unit transmitted wave t e^{i w x} at x > 1, propagated back to x = 0^-
    State s{std::exp(I * w), I * w * std::exp(I * w)};
    s.u += s.up / (p.chi_R * w * w);
    const double x0 = p.x0, chi_s = p.chi_s();
    if (x0 > 0.0) {
        s = propagate(s, w, -(1.0 - x0));
        s.up += chi_s * w * w * s.u;
        s = propagate(s, w, -x0);
    } else {
        s = propagate(s, w, -1.0);
        s.up += chi_s * w * w * s.u;
    }
    const complexd u0m = s.u + s.up / (p.chi_L * w * w);
    const complexd up0m = s.up;
    // x < 0: a e^{iwx} + b e^{-iwx}; incident amplitude a
    const complexd a = 0.5 * (u0m + up0m / (I * w));
    const double t2 = 1.0 / std::norm(a);
    return t2;
}

std::vector<double> transmission(const CircuitParams& p, const std::vector<double>& omega_grid)
{
    std::vector<double> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid) out.push_back(transmission(p, w));
    return out;
}

} // namespace cqed::greens
