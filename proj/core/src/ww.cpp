#include "cqed/ww.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <stdexcept>

namespace cqed::ww {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr complexd I{0.0, 1.0};

} // namespace

WwKernelSpec WwKernelSpec::from_params(const CircuitParams& p, CouplingProfile profile,
                                       double omega_max)
{
    p.validate();
    WwKernelSpec s;
    s.profile = profile;
    s.gamma = p.gamma();
    s.chi_s = p.chi_s();
    s.omega_j = p.omega_j;
    s.omega_max = omega_max;
    return s;
}

double WwKernelSpec::prefactor() const
{
    return gamma * chi_s * omega_j / (8.0 * kPi);
}

double WwKernelSpec::phi2(double omega) const
{
    if (profile == CouplingProfile::flat) return flat_n2;
    return 2.0 / (1.0 + chi_s + chi_s * chi_s * omega * omega);
}

double e1_scaled(double x)
{
    if (!(x > 0.0)) throw std::invalid_argument("e1_scaled: x must be > 0");
    if (x <= 1.0) {
        // series E_1(x) = -gamma - ln x + sum (-1)^{k+1} x^k/(k k!)
        double sum = -0.57721566490153286061 - std::log(x);
        double term = 1.0;
        for (int k = 1; k < 30; ++k) {
            term *= -x / k;
            sum -= term / k;
            if (std::abs(term / k) < 1e-18 * std::abs(sum)) break;
        }
        return std::exp(x) * sum;
    }
    // continued fraction e^x E_1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...))))
    double b = x + 1.0, c = 1e308, d = 1.0 / b, h = d;
    for (int k = 1; k < 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

double ei_scaled(double x)
{
    if (!(x > 0.0)) throw std::invalid_argument("ei_scaled: x must be > 0");
    if (x < 44.0) return std::exp(-x) * boost::math::expint(x);
    // asymptotic Ei(x) ~ e^x/x sum k!/x^k, truncated at the smallest term
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 80; ++k) {
        const double next = term * k / x;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / x;
}

complexd kernel_time(const WwKernelSpec& spec, double tau)
{
    if (!(tau > 0.0)) throw std::invalid_argument("kernel_time: tau must be > 0");
    const double pref = spec.prefactor();
    const complexd rot = std::exp(I * spec.omega_j * tau);
    if (spec.profile == CouplingProfile::flat) {
        // int_0^W w e^{-i w tau} dw in closed form
        const double W = spec.omega_max;
        const complexd it = -I * tau;
        const complexd J = (W * std::exp(it * W)) / it - (std::exp(it * W) - 1.0) / (it * it);
        return pref * spec.flat_n2 * rot * J;
    }
    // suppressed: 2w/(chi_s^2 (w^2+a^2)) = (1/chi_s^2)[1/(w-ia) + 1/(w+ia)],
    // int_0^inf e^{-iw tau}/(w -+ ia) dw = e^{+-a tau} E_1(+-a tau) with the
    // branch E_1(-x + i0) = -Ei(x) - i pi on the cut
    const double a = std::sqrt(1.0 + spec.chi_s) / spec.chi_s;
    const double x = a * tau;
    const complexd J = (e1_scaled(x) - ei_scaled(x)) - I * kPi * std::exp(-x);
    return pref * rot * J / (spec.chi_s * spec.chi_s);
}

double kernel_k0(const WwKernelSpec& spec)
{
    const double pref = spec.prefactor();
    const double W = spec.omega_max;
    if (spec.profile == CouplingProfile::flat)
        return pref * spec.flat_n2 * 0.5 * W * W;
    const double c2 = spec.chi_s * spec.chi_s;
    const double a2 = (1.0 + spec.chi_s) / c2;
    return pref * std::log1p(W * W / a2) / c2;
}

namespace {

// omega integral over [0, W] of g(w)/(s + i(w - omega_j))
complexd laplace_integral(const WwKernelSpec& spec, complexd s, double W)
{
    using boost::math::quadrature::gauss_kronrod;
    const double wj = spec.omega_j;
    auto f_re = [&](double w) {
        return (w * spec.phi2(w) / (s + I * (w - wj))).real();
    };
    auto f_im = [&](double w) {
        return (w * spec.phi2(w) / (s + I * (w - wj))).imag();
    };
    // split at the near-resonant point to help the adaptive refinement
    double re = 0.0, im = 0.0;
    const double split = std::min(std::max(wj, 1e-3), W);
    for (auto [a, b] : {std::pair<double, double>{0.0, split}, {split, W}}) {
        if (b <= a) continue;
        re += gauss_kronrod<double, 15>::integrate(f_re, a, b, 40, 1e-11);
        im += gauss_kronrod<double, 15>::integrate(f_im, a, b, 40, 1e-11);
    }
    return {re, im};
}

// analytic large-omega tail of the suppressed-profile integral
complexd laplace_tail(const WwKernelSpec& spec, complexd s, double W)
{
    const double c = 2.0 / (spec.chi_s * spec.chi_s);
    const double a2 = (1.0 + spec.chi_s) / (spec.chi_s * spec.chi_s);
    const complexd b = s - I * spec.omega_j;
    complexd total{0.0, 0.0};
    for (int j = 0; j <= 2; ++j) {
        for (int k = 0; k <= 3; ++k) {
            const int p = 2 * j + k + 2;
            const complexd coef = c * std::pow(-a2, j) * std::pow(-b, k) / std::pow(I, k + 1);
            total += coef * std::pow(W, -(p - 1)) / static_cast<double>(p - 1);
        }
    }
    return total;
}

complexd laplace_value(const WwKernelSpec& spec, complexd s, double W)
{
    complexd val = laplace_integral(spec, s, W);
    if (spec.profile == CouplingProfile::suppressed) val += laplace_tail(spec, s, W);
    if (s.real() < 0.0) {
        // analytic continuation across the branch line: the omega pole at
        // w* = omega_j + i s crossed the contour, phi2 continued analytically
        const complexd wstar = spec.omega_j + I * s;
        complexd p2;
        if (spec.profile == CouplingProfile::flat) {
            p2 = spec.flat_n2;
        } else {
            p2 = 2.0 / (1.0 + spec.chi_s + spec.chi_s * spec.chi_s * wstar * wstar);
        }
        val += 2.0 * kPi * wstar * p2;
    }
    return spec.prefactor() * val;
}

} // namespace

LaplaceResult kernel_laplace(const WwKernelSpec& spec, complexd s)
{
    if (std::abs(s.real()) < 1e-12) s += 1e-6;  // i-epsilon prescription
    LaplaceResult out;
    const complexd v1 = laplace_value(spec, s, spec.omega_max);
    const complexd v2 = laplace_value(spec, s, 2.0 * spec.omega_max);
    out.value = v2;
    out.doubling_change = std::abs(v2 - v1) / std::max(std::abs(v2), 1e-300);
    out.converged = out.doubling_change < 1e-6;
    if (!out.converged)
        out.diagnostic = "kernel integral not converged under omega_max doubling "
                         "(relative change " + std::to_string(out.doubling_change) + ")";
    return out;
}

complexd laplace_pole(const WwKernelSpec& spec)
{
    if (spec.profile == CouplingProfile::flat)
        throw std::invalid_argument("laplace_pole: flat profile kernel diverges");
    auto K = [&](complexd s) { return laplace_value(spec, s, spec.omega_max); };
    complexd s{-1e-3, -1e-3};
    for (int it = 0; it < 100; ++it) {
        const complexd F = s + K(s);
        const double h = 1e-7 * std::max(1.0, std::abs(s));
        const complexd dF = 1.0 + (K(s + h) - K(s - h)) / (2.0 * h);
        const complexd ds = F / dF;
        s -= ds;
        if (std::abs(ds) < 1e-12 * std::max(1.0, std::abs(s))) return s;
    }
    throw std::runtime_error("laplace_pole: Newton did not converge");
}

DecayResult decay_amplitude(const WwKernelSpec& spec, const std::vector<double>& t_grid,
                            bool check_step)
{
    if (spec.profile == CouplingProfile::flat)
        throw std::invalid_argument(
            "decay_amplitude: flat profile rejected, kernel diverges with omega_max "
            "(K(0) grows like omega_max^2); use the suppressed profile");
    const std::size_t n = t_grid.size();
    if (n < 3) throw std::invalid_argument("decay_amplitude: need at least 3 grid points");
    const double h = t_grid[1] - t_grid[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(t_grid[i] - t_grid[i - 1] - h) > 1e-9 * h)
            throw std::invalid_argument("decay_amplitude: grid must be uniform");

    // product-trapezoidal march at step h, optionally repeated at h/2
    auto march = [&](double step, std::size_t count) {
        // kernel moments A_m = int over [m step, (m+1) step] of K,
        // B_m likewise with weight (tau - m step); 4-point Gauss-Legendre,
        // the first panel subdivided geometrically to tame the log endpoint
        static const double gx[4] = {-0.861136311594053, -0.339981043584856,
                                     0.339981043584856, 0.861136311594053};
        static const double gw[4] = {0.347854845137454, 0.652145154862546,
                                     0.652145154862546, 0.347854845137454};
        std::vector<complexd> A(count), B(count);
        auto accumulate = [&](double lo, double hi, double base, complexd& a, complexd& b) {
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int q = 0; q < 4; ++q) {
                const double tau = mid + half * gx[q];
                const complexd k = kernel_time(spec, tau);
                a += gw[q] * half * k;
                b += gw[q] * half * k * (tau - base);
            }
        };
        for (std::size_t m = 0; m < count; ++m) {
            complexd a{0.0, 0.0}, b{0.0, 0.0};
            const double lo = m * step, hi = (m + 1) * step;
            if (m == 0) {
                double edges[6] = {step * 1e-8, step * 1e-6, step * 1e-4,
                                   step * 1e-2, step * 0.25, step};
                double prev = 0.0;
                for (double e : edges) {
                    if (prev > 0.0 || e > 0.0) accumulate(std::max(prev, step * 1e-12), e, 0.0, a, b);
                    prev = e;
                }
            } else {
                accumulate(lo, hi, lo, a, b);
            }
            A[m] = a;
            B[m] = b;
        }

        std::vector<complexd> c(count + 1), integral(count + 1);
        c[0] = 1.0;
        integral[0] = 0.0;
        for (std::size_t k = 1; k <= count; ++k) {
            complexd known{0.0, 0.0};
            complexd coeff{0.0, 0.0};
            for (std::size_t m = 0; m < k; ++m) {
                const std::size_t j = k - m - 1;
                const complexd lin = A[j] - B[j] / step;  // weight of c_m on this panel
                if (m + 1 == k) {
                    known += c[m] * lin;
                    coeff += A[j] - lin;  // weight of the unknown c_k
                } else {
                    known += c[m] * lin + c[m + 1] * (A[j] - lin);
                }
            }
            const complexd ck = (c[k - 1] - 0.5 * step * (integral[k - 1] + known))
                              / (1.0 + 0.5 * step * coeff);
            c[k] = ck;
            integral[k] = known + coeff * ck;
        }
        return c;
    };

    DecayResult out;
    out.t = t_grid;
    const auto coarse = march(h, n - 1);
    out.c = coarse;
    if (check_step) {
        const auto fine = march(0.5 * h, 2 * (n - 1));
        out.step_check = std::abs(fine.back() - coarse.back());
        if (out.step_check > 1e-4)
            out.warning = "step-halving disagreement " + std::to_string(out.step_check)
                        + "; suggest h <= " + std::to_string(0.5 * h);
    }
    return out;
}

double markov_rate(const WwKernelSpec& spec)
{
    const double n2 = (spec.profile == CouplingProfile::flat) ? spec.flat_n2
                                                              : spec.phi2(spec.omega_j);
    return 0.5 * spec.gamma * spec.chi_s * spec.omega_j * spec.omega_j * n2;
}

} // namespace cqed::ww
