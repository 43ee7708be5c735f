#include <doctest.h>

#include <cmath>
#include <complex>

#include "cqed/io.hpp"
#include "cqed/ww.hpp"
#include "oracles.hpp"

namespace ww = cqed::ww;
using complexd = std::complex<double>;

namespace {

ww::WwKernelSpec strong_spec()
{
    ww::WwKernelSpec s;
    s.gamma = 0.5;
    s.chi_s = 0.1;
    s.omega_j = 3.0;
    s.omega_max = 1e3;
    return s;
}

} // namespace

TEST_CASE("scaled exponential integrals against 30-digit references")
{
    CHECK(ww::e1_scaled(0.5) == doctest::Approx(0.92291063248373046883).epsilon(1e-14));
    CHECK(ww::e1_scaled(10.0) == doctest::Approx(0.091563333939788081876).epsilon(1e-14));
    CHECK(ww::e1_scaled(1000.0) == doctest::Approx(0.000999001994023880715).epsilon(1e-14));
    CHECK(ww::ei_scaled(1.0) == doctest::Approx(0.69717488323506606877).epsilon(1e-13));
    CHECK(ww::ei_scaled(50.0) == doctest::Approx(0.020417045555943987334).epsilon(1e-13));
    CHECK(ww::ei_scaled(1000.0) == doctest::Approx(0.0010010020060241207251).epsilon(1e-13));
}

TEST_CASE("closed-form time kernel equals the quadrature oracle")
{
    const auto spec = strong_spec();
    for (double tau : {0.05, 0.5, 2.0}) {
        const complexd k = ww::kernel_time(spec, tau);
        const complexd rot = std::exp(complexd{0.0, spec.omega_j * tau});
        const complexd ref = spec.prefactor() * rot
                           * oracle::ww_kernel_integral(spec.chi_s, tau);
        CHECK(std::abs(k - ref) < 2e-5 * std::abs(ref) + 1e-9);
    }
}

TEST_CASE("Laplace kernel")
{
    SUBCASE("suppressed profile is stable under cutoff doubling beyond 1e3") {
        const auto lap = ww::kernel_laplace(strong_spec(), complexd{0.01, -0.2});
        CHECK(lap.converged);
        CHECK(lap.doubling_change < 1e-6);
    }
    SUBCASE("flat profile reports divergence") {
        auto spec = strong_spec();
        spec.profile = ww::CouplingProfile::flat;
        const auto lap = ww::kernel_laplace(spec, complexd{0.01, -0.2});
        CHECK(!lap.converged);
        CHECK(!lap.diagnostic.empty());
    }
    SUBCASE("gamma = 0 kills the kernel") {
        auto spec = strong_spec();
        spec.gamma = 0.0;
        const auto lap = ww::kernel_laplace(spec, complexd{0.1, -0.4});
        CHECK(std::abs(lap.value) == 0.0);
    }
    SUBCASE("continuation is continuous across the imaginary axis") {
        const auto spec = strong_spec();
        // the i-epsilon shift evaluates Re s = +1e-6; just below the axis the
        // continuation branch must join it smoothly
        const auto above = ww::kernel_laplace(spec, complexd{+1e-5, -0.2});
        const auto below = ww::kernel_laplace(spec, complexd{-1e-5, -0.2});
        CHECK(std::abs(above.value - below.value) < 1e-3 * std::abs(above.value));
    }
}

TEST_CASE("flat-profile divergence witness: K(0) quadruples with omega_max")
{
    auto spec = strong_spec();
    spec.profile = ww::CouplingProfile::flat;
    const double k0 = ww::kernel_k0(spec);
    spec.omega_max *= 2.0;
    const double k0d = ww::kernel_k0(spec);
    CHECK(k0d / k0 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("Markov rate closed form")
{
    ww::WwKernelSpec spec;
    spec.profile = ww::CouplingProfile::flat;
    spec.gamma = 2.0 / 3.0;
    spec.chi_s = 1.0 / 30.0;
    spec.omega_j = 3.0;
    spec.flat_n2 = 2.0;
    CHECK(ww::markov_rate(spec) == doctest::Approx(0.2).epsilon(1e-15));

    // omega_j doubling quadruples the rate
    auto spec2 = spec;
    spec2.omega_j = 6.0;
    CHECK(ww::markov_rate(spec2) == doctest::Approx(0.8).epsilon(1e-15));

    // gamma = 0 gives zero
    auto spec0 = spec;
    spec0.gamma = 0.0;
    CHECK(ww::markov_rate(spec0) == 0.0);
}

TEST_CASE("Volterra march")
{
    const auto spec = strong_spec();
    const auto grid = cqed::io::linspace(0.0, 25.0, 2001);

    SUBCASE("unitarity bound and pole-rate agreement") {
        const auto decay = ww::decay_amplitude(spec, grid);
        double max_abs = 0.0;
        for (const auto& c : decay.c) max_abs = std::max(max_abs, std::abs(c));
        CHECK(max_abs <= 1.0 + 1e-9);
        CHECK(decay.step_check < 1e-4);

        // |c|^2 ~ exp(2 Re s* t) over the exponential window
        const complexd pole = ww::laplace_pole(spec);
        double t1 = 5.0, t2 = 20.0;
        const auto at = [&](double t) {
            const std::size_t i = static_cast<std::size_t>(t / 25.0 * 2000.0);
            return std::norm(decay.c[i]);
        };
        const double rate = -std::log(at(t2) / at(t1)) / (t2 - t1);
        CHECK(rate == doctest::Approx(-2.0 * pole.real()).epsilon(0.05));
    }
    SUBCASE("second-order convergence under step halving") {
        const auto coarse_grid = cqed::io::linspace(0.0, 10.0, 201);
        const auto fine_grid = cqed::io::linspace(0.0, 10.0, 401);
        const auto coarse = ww::decay_amplitude(spec, coarse_grid, true);
        const auto fine = ww::decay_amplitude(spec, fine_grid, true);
        // step_check is |c_h(T) - c_{h/2}(T)|, which itself shrinks ~4x
        CHECK(coarse.step_check / fine.step_check == doctest::Approx(4.0).epsilon(0.4));
    }
    SUBCASE("gamma chi_s = 0 freezes the amplitude at 1") {
        auto frozen = spec;
        frozen.gamma = 0.0;
        const auto decay = ww::decay_amplitude(frozen, cqed::io::linspace(0.0, 5.0, 101), false);
        for (const auto& c : decay.c) CHECK(std::abs(c - 1.0) < 1e-12);
    }
    SUBCASE("flat profile is rejected with the divergence diagnostic") {
        auto flat = spec;
        flat.profile = ww::CouplingProfile::flat;
        CHECK_THROWS(ww::decay_amplitude(flat, grid));
    }
}

TEST_CASE("exact pole approaches the Markov rate as coupling weakens")
{
    // the weak-coupling pole sits at Re s -> -Gamma_sp/4 with Gamma_sp built
    // from the suppressed |phi(omega_j)|^2; the golden-rule window evaluates
    // the spectral density at the qubit frequency, and the closed-form rate
    // convention carries a factor two from the full-weight endpoint delta
    double prev_gap = 1e9;
    for (double gamma : {0.5, 0.125}) {
        auto spec = strong_spec();
        spec.gamma = gamma;
        const complexd pole = ww::laplace_pole(spec);
        const double markov_quarter = 0.25 * ww::markov_rate(spec);
        const double gap = std::abs(-pole.real() - markov_quarter) / markov_quarter;
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
}
