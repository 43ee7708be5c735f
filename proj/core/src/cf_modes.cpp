#include "cqed/cf_modes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqed/cc_modes.hpp"

namespace cqed::cf {

namespace {

constexpr complexd I{0.0, 1.0};

struct Terms {
    complexd t1;     // 1 - A B Ea Eb
    complexd t2;     // (i/2) chi_s w (1 + A Ea)(1 + B Eb)
    complexd dt1, dt2;
    double scale;
};

Terms eval_terms(const CircuitParams& p, complexd w)
{
    const double x0 = p.x0, chi_s = p.chi_s();
    const complexd A = 1.0 - 2.0 * I * p.chi_L * w, dA = -2.0 * I * p.chi_L;
    const complexd B = 1.0 - 2.0 * I * p.chi_R * w, dB = -2.0 * I * p.chi_R;
    const complexd Ea = std::exp(-2.0 * I * w * x0), dEa = -2.0 * I * x0 * Ea;
    const complexd Eb = std::exp(-2.0 * I * w * (1.0 - x0)), dEb = -2.0 * I * (1.0 - x0) * Eb;

    Terms t;
    t.t1 = 1.0 - A * B * Ea * Eb;
    t.dt1 = -(dA * B * Ea * Eb + A * dB * Ea * Eb + A * B * dEa * Eb + A * B * Ea * dEb);
    const complexd u = 1.0 + A * Ea, du = dA * Ea + A * dEa;
    const complexd v = 1.0 + B * Eb, dv = dB * Eb + B * dEb;
    t.t2 = 0.5 * I * chi_s * w * u * v;
    t.dt2 = 0.5 * I * chi_s * (u * v + w * (du * v + u * dv));
    t.scale = 1.0 + std::abs(A * B * Ea * Eb) + std::abs(t.t2);
    return t;
}

} // namespace

complexd characteristic(const CircuitParams& p, complexd omega)
{
    const auto t = eval_terms(p, omega);
    return t.t1 + t.t2;
}

complexd characteristic_derivative(const CircuitParams& p, complexd omega)
{
    const auto t = eval_terms(p, omega);
    return t.dt1 + t.dt2;
}

double characteristic_scale(const CircuitParams& p, complexd omega)
{
    return eval_terms(p, omega).scale;
}

namespace {

// Guarded complex Newton; returns the root, throws after max_iter.
complexd newton(const CircuitParams& p, complexd z, int max_iter = 200)
{
    for (int it = 0; it < max_iter; ++it) {
        const auto t = eval_terms(p, z);
        const complexd f = t.t1 + t.t2;
        const complexd df = t.dt1 + t.dt2;
        complexd dz = f / df;
        if (std::abs(dz) > 1.0) dz /= std::abs(dz);  // trust region of one unit
        z -= dz;
        if (std::abs(dz) < 1e-14 * std::max(1.0, std::abs(z))) return z;
    }
    throw std::runtime_error("cf::resonances: Newton did not converge after 200 iterations");
}

} // namespace

std::vector<CFResonance> resonances(const CircuitParams& p, int count)
{
    p.validate();
    if (count < 1) throw std::invalid_argument("cf::resonances: count must be >= 1");
    if (p.chi_R == 0.0 && p.chi_L == 0.0)
        throw std::invalid_argument("cf::resonances: open case requires chi_R or chi_L > 0");

    std::vector<CFResonance> out;
    out.reserve(count + 1);
    // n = 0: the zero-frequency root (F(0) = 0 identically for this circuit)
    out.push_back({0, 0.0, 0.0, std::abs(characteristic(p, 0.0))});

    const auto cc_roots = cc::eigenfrequencies(p, count);
    double prev_kappa = 1e-6;
    double prev_nu = 0.0;
    for (int n = 1; n <= count; ++n) {
        complexd z = newton(p, complexd(cc_roots[n - 1], -prev_kappa));
        // a jump across a free spectral range signals a skipped or duplicated
        // root; retry from a perturbed seed before giving up
        if (std::abs(z.real() - cc_roots[n - 1]) > 1.5) {
            z = newton(p, complexd(cc_roots[n - 1], -0.5 * prev_kappa - 1e-8));
        }
        if (z.imag() > 1e-12)
            throw std::runtime_error("cf::resonances: root escaped the upper half-plane at n="
                                     + std::to_string(n));
        if (z.real() < 0.0) z = -std::conj(z);  // pick the +nu member of the pair
        if (n > 1 && std::abs(z.real() - prev_nu) < 1e-9)
            throw std::runtime_error("cf::resonances: duplicate root at n=" + std::to_string(n));
        const double res = std::abs(characteristic(p, z)) / characteristic_scale(p, z);
        out.push_back({n, z.real(), -z.imag(), res});
        prev_kappa = -z.imag();
        prev_nu = z.real();
    }
    return out;
}

int count_in_rectangle(const CircuitParams& p, complexd lo, complexd hi)
{
    p.validate();
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
        throw std::invalid_argument("count_in_rectangle: need lo < hi componentwise");

    const complexd corners[5] = {lo, {hi.real(), lo.imag()}, hi, {lo.real(), hi.imag()}, lo};
    double winding = 0.0;
    for (int e = 0; e < 4; ++e) {
        // adaptive phase tracking along one edge: refine until each step
        // advances the argument by less than pi/2
        const complexd a = corners[e], b = corners[e + 1];
        int nseg = 64;
        for (int attempt = 0; attempt < 12; ++attempt) {
            double total = 0.0;
            bool ok = true;
            complexd fprev = characteristic(p, a);
            for (int i = 1; i <= nseg; ++i) {
                const complexd z = a + (b - a) * (static_cast<double>(i) / nseg);
                const complexd f = characteristic(p, z);
                const double dphi = std::arg(f / fprev);
                if (std::abs(dphi) > 1.5) { ok = false; break; }
                total += dphi;
                fprev = f;
            }
            if (ok) { winding += total; break; }
            nseg *= 4;
            if (attempt == 11)
                throw std::runtime_error("count_in_rectangle: contour too close to a root");
        }
    }
    return static_cast<int>(std::lround(winding / (2.0 * 3.14159265358979323846)));
}

} // namespace cqed::cf
