#include "cqed/validate.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "cqed/cc_modes.hpp"
#include "cqed/cf_modes.hpp"
#include "cqed/charfn.hpp"
#include "cqed/greens.hpp"
#include "cqed/hybridize.hpp"
#include "cqed/ww.hpp"

namespace cqed::validate {

namespace {

using complexd = std::complex<double>;
constexpr complexd I{0.0, 1.0};

CheckResult make(const std::string& name, double value, double bound, const std::string& detail = "")
{
    return {name, value <= bound, value, bound, detail};
}

} // namespace

std::vector<CheckResult> run_validation(const CircuitParams& p)
{
    p.validate();
    std::vector<CheckResult> out;
    const double chi_s = p.chi_s();

    // CC residuals and current-conservation jump
    {
        const auto omegas = cc::eigenfrequencies(p, 50);
        double worst_res = 0.0;
        for (double w : omegas) {
            const double scale = 1.0 + chi_s * w;
            worst_res = std::max(worst_res, std::abs(cc::characteristic(chi_s, p.x0, w)) / scale);
        }
        out.push_back(make("cc.residual", worst_res, 1e-10));

        double worst_jump = 0.0;
        if (chi_s > 0.0) {
            const double h = 1e-6;
            for (int n : {0, 3, 9}) {
                const double w = omegas[n];
                const double x0 = p.x0;
                const double f0 = cc::mode_function(p, w, x0);
                double dp, dm;
                if (x0 > 2.0 * h) {
                    dp = (-3.0 * f0 + 4.0 * cc::mode_function(p, w, x0 + h)
                          - cc::mode_function(p, w, x0 + 2.0 * h)) / (2.0 * h);
                    dm = (3.0 * f0 - 4.0 * cc::mode_function(p, w, x0 - h)
                          + cc::mode_function(p, w, x0 - 2.0 * h)) / (2.0 * h);
                } else {
                    // x0 at the wall: left derivative is zero (Neumann side)
                    dp = (-3.0 * f0 + 4.0 * cc::mode_function(p, w, x0 + h)
                          - cc::mode_function(p, w, x0 + 2.0 * h)) / (2.0 * h);
                    dm = 0.0;
                }
                const double viol = std::abs(dp - dm + chi_s * w * w * f0) / (1.0 + chi_s * w * w);
                worst_jump = std::max(worst_jump, viol);
            }
        }
        out.push_back(make("cc.current_conservation", worst_jump, 1e-6,
                           "finite-difference derivative jump at x0"));

        // orthonormality by quadrature (independent of the closed-form norm)
        using boost::math::quadrature::gauss_kronrod;
        double worst_orth = 0.0;
        for (auto [i, j] : {std::pair<int, int>{0, 0}, {2, 2}, {1, 4}}) {
            const double wi = omegas[i], wj = omegas[j];
            auto f = [&](double x) {
                return cc::mode_function(p, wi, x) * cc::mode_function(p, wj, x);
            };
            double integral = 0.0;
            if (p.x0 > 0.0)
                integral += gauss_kronrod<double, 31>::integrate(f, 0.0, p.x0, 15, 1e-10);
            integral += gauss_kronrod<double, 31>::integrate(f, p.x0, 1.0, 15, 1e-10);
            integral += chi_s * cc::mode_function(p, wi, p.x0) * cc::mode_function(p, wj, p.x0);
            const double target = (i == j) ? 1.0 : 0.0;
            worst_orth = std::max(worst_orth, std::abs(integral - target));
        }
        out.push_back(make("cc.orthonormality", worst_orth, 1e-6, "weighted quadrature"));

        // completeness sum rule: chi_s (sum phi^2 + zero mode) -> 1
        if (chi_s > 0.0) {
            const auto many = cc::eigenfrequencies(p, 4000);
            const double total = cc::sum_phi2(p, many) + 1.0 / (1.0 + chi_s);
            const double defect = std::abs(chi_s * total - 1.0);
            out.push_back(make("cc.sum_rule", defect, 2.0 / (4000.0 * 3.14159 * 3.14159 * chi_s) * 10,
                               "partial sum at N=4000 vs 1/chi_s"));
        }
    }

    // CF symmetry, residuals, argument-principle count
    if (p.chi_R > 0.0 || p.chi_L > 0.0) {
        const auto res = cf::resonances(p, 30);
        double worst = 0.0, worst_sym = 0.0;
        for (const auto& r : res) {
            if (r.n == 0) continue;
            worst = std::max(worst, r.residual);
            const complexd mirror{-r.nu_n, -r.kappa_n};
            worst_sym = std::max(worst_sym,
                                 std::abs(cf::characteristic(p, mirror))
                                     / cf::characteristic_scale(p, mirror));
        }
        out.push_back(make("cf.residual", worst, 1e-10));
        out.push_back(make("cf.mirror_symmetry", worst_sym, 1e-9, "-conj(root) is also a root"));

        const double lo_re = 0.1, hi_re = res[10].nu_n + 1.0;
        const double max_k = [&] {
            double m = 0.0;
            for (int i = 1; i <= 10; ++i) m = std::max(m, res[i].kappa_n);
            return m;
        }();
        const int count = cf::count_in_rectangle(p, {lo_re, -10.0 * std::max(max_k, 0.1)},
                                                 {hi_re, -1e-9});
        int expected = 0;
        for (int i = 1; i <= 10; ++i)
            if (res[i].nu_n > lo_re && res[i].nu_n < hi_re) ++expected;
        out.push_back(make("cf.argument_principle", std::abs(count - expected), 0.0,
                           "winding count vs enumerated roots"));
    }

    // Green's function: reciprocity, jump condition, spectral cross-check
    {
        const complexd w{1.37, 0.0};
        const double xa = 0.31, xb = 0.77;
        const complexd g1 = greens::green_direct(p, xa, xb, w);
        const complexd g2 = greens::green_direct(p, xb, xa, w);
        out.push_back(make("greens.reciprocity", std::abs(g1 - g2), 1e-9));

        // at x0 = 0 the left side of the delta is the resonator wall, where a
        // one-sided sample is impossible for the open ends; the closed
        // variant has a true Neumann wall (d/dx = 0) there
        const double h = 1e-6;
        const double x0 = p.x0;
        const bool at_wall = x0 < 2.0 * h;
        auto G = [&](double x) {
            return at_wall ? greens::green_direct_closed(p, x, x0, w)
                           : greens::green_direct(p, x, x0, w);
        };
        complexd dp, dm;
        const complexd G0 = G(x0);
        dp = (-3.0 * G0 + 4.0 * G(x0 + h) - G(x0 + 2.0 * h)) / (2.0 * h);
        dm = at_wall ? complexd{0.0, 0.0}
                     : (3.0 * G0 - 4.0 * G(x0 - h) + G(x0 - 2.0 * h)) / (2.0 * h);
        const complexd jump = dp - dm + chi_s * w * w * G0;
        out.push_back(make("greens.jump_condition", std::abs(jump - 1.0), 1e-6,
                           "source + chi_s jump at x0"));

        const complexd direct = greens::green_direct_closed(p, xa, xb, 1.0);
        const complexd spectral = greens::green_spectral_closed(p, xa, xb, 1.0, 8000);
        out.push_back(make("greens.spectral_vs_direct", std::abs(direct - spectral), 1e-4));
    }

    // charfn: Schwarz symmetry, kernel-form agreement, residual certificate
    if (chi_s > 0.0) {
        const auto f = charfn::build(p, 2000);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> ur(-5.0, 5.0);
        double worst_schwarz = 0.0;
        for (int i = 0; i < 100; ++i) {
            const complexd s{ur(rng), ur(rng)};
            const complexd d1 = f.evaluate(std::conj(s));
            const complexd d2 = std::conj(f.evaluate(s));
            worst_schwarz = std::max(worst_schwarz,
                                     std::abs(d1 - d2) / std::max(1.0, std::abs(d2)));
        }
        out.push_back(make("charfn.schwarz_symmetry", worst_schwarz, 1e-12));

        // contour form of the kernel representation:
        // D(s) = s^2 + omega_j^2 [1 - gamma - gamma chi_s s^2 G(x0,x0,i s)]
        double worst_kernel = 0.0;
        for (double wp : {0.8, 2.0, 4.5}) {
            const complexd s{1e-6, -wp};
            const complexd dm_ = f.evaluate(s);
            const complexd gis = greens::green_direct(p, p.x0, p.x0, I * s);
            const complexd dk = s * s
                              + p.omega_j * p.omega_j
                                    * (1.0 - p.gamma() - p.gamma() * chi_s * s * s * gis);
            const double scale = std::norm(s) + p.omega_j * p.omega_j;
            worst_kernel = std::max(worst_kernel, std::abs(dm_ - dk) / scale);
        }
        out.push_back(make("charfn.kernel_form", worst_kernel, 1e-3,
                           "modal sum vs Green's-function contour form"));

        const auto pole = charfn::qubit_pole(p);
        out.push_back(make("charfn.pole_residual",
                           pole.residual / (p.omega_j * p.omega_j), 1e-9));

        // lossless consistency with the hybridized spectrum
        const auto spec = hybrid::diagonalize(p, 256);
        const auto fl = charfn::build_lossless(p, 256, charfn::TailMode::none);
        const auto pl = charfn::qubit_pole_fixed(
            fl, complexd{0.0, -p.omega_j * std::sqrt(1.0 - p.gamma())});
        out.push_back(make("hybridize.charfn_consistency",
                           std::abs(spec.beta_j - pl.beta_j), 1e-6));

        double u2 = spec.u_j * spec.u_j;
        for (double u : spec.u_n) u2 += u * u;
        out.push_back(make("hybridize.u_normalization", std::abs(u2 - 1.0), 1e-12));
    }

    // WW: unitarity bound and doubling certificate
    {
        ww::WwKernelSpec spec = ww::WwKernelSpec::from_params(p);
        if (spec.chi_s == 0.0) spec.chi_s = 0.1;  // kernel needs a finite suppression scale
        const auto lap = ww::kernel_laplace(spec, complexd{0.01, -0.2});
        out.push_back(make("ww.doubling_certificate", lap.doubling_change, 1e-6));

        const auto grid = [&] {
            std::vector<double> t(401);
            for (int i = 0; i <= 400; ++i) t[i] = 10.0 * i / 400.0;
            return t;
        }();
        const auto decay = ww::decay_amplitude(spec, grid, false);
        double max_abs = 0.0;
        for (const auto& c : decay.c) max_abs = std::max(max_abs, std::abs(c));
        out.push_back(make("ww.unitarity_bound", max_abs - 1.0, 1e-9));
    }

    return out;
}

} // namespace cqed::validate
