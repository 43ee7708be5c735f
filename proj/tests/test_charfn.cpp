#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cqed/cf_modes.hpp"
#include "cqed/charfn.hpp"
#include "cqed/dispersive.hpp"
#include "cqed/greens.hpp"
#include "oracles.hpp"

using cqed::CircuitParams;
namespace charfn = cqed::charfn;
using complexd = std::complex<double>;

namespace {

constexpr complexd I{0.0, 1.0};

} // namespace

TEST_CASE("evaluation at a bare modal pole is reported")
{
    CircuitParams p;
    const auto f = charfn::build(p, 50);
    const auto& d = f.modal_data();
    const double kappa = 0.5 * d.two_kappa[0];
    const complexd z{-kappa, -std::sqrt(d.omega2[0] - kappa * kappa)};
    CHECK_THROWS(f.evaluate(z));
}

TEST_CASE("decoupled circuit: bare qubit pole is an exact zero")
{
    CircuitParams p;
    p.chi_g = 0.0;
    p.omega_j = 2.3;
    const auto f = charfn::build(p, 100);
    CHECK(std::abs(f.evaluate(-I * p.omega_j)) < 1e-14);
    const auto pole = charfn::qubit_pole(p);
    CHECK(pole.alpha_j == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(pole.lamb_shift == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("Schwarz symmetry at random complex arguments")
{
    CircuitParams p;
    const auto f = charfn::build(p, 500);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        const complexd s{u(rng), u(rng)};
        const complexd lhs = f.evaluate(std::conj(s));
        const complexd rhs = std::conj(f.evaluate(s));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("term magnitudes decay like 1/n^2 for chi_s > 0, stay order one for chi_s = 0")
{
    CircuitParams p;
    const auto d1 = charfn::build_modal_data(p, 2000);
    const double w_tail = d1->weight[1499] / d1->omega2[1499];
    const double w_head = d1->weight[99] / d1->omega2[99];
    // weight/omega^2 ~ phi^2 ~ 1/omega^2 in the suppressed regime
    CHECK(w_tail / w_head < 0.05);

    CircuitParams p0 = p;
    p0.chi_s_override = 0.0;
    const auto d0 = charfn::build_modal_data(p0, 2000);
    CHECK(d0->weight[1499] / d0->omega2[1499]
          == doctest::Approx(d0->weight[99] / d0->omega2[99]).epsilon(1e-9));
}

TEST_CASE("pole drift under truncation doubling")
{
    SUBCASE("sum-rule tail meets the 1e-8 drift rule at N = 2000") {
        CircuitParams p;  // chi_s = 1/30
        p.omega_j = cqed::cf::resonances(p, 1)[1].nu_n;  // on resonance, worst case
        const complexd seed = -I * p.omega_j * std::sqrt(1.0 - p.gamma());
        const auto pa = charfn::qubit_pole_fixed(charfn::build(p, 2000), seed);
        const auto pb = charfn::qubit_pole_fixed(charfn::build(p, 4000), seed);
        CHECK(std::abs(pa.p_j - pb.p_j) < 1e-8 * p.omega_j);
    }
    SUBCASE("chi_s = 0 fails truncation with an explicit error") {
        CircuitParams p;
        p.chi_s_override = 0.0;
        p.omega_j = 2.0;
        charfn::PoleOptions opt;
        opt.max_truncation = 4000;
        bool threw = false;
        try {
            charfn::qubit_pole(p, opt);
        } catch (const std::runtime_error& e) {
            threw = std::string(e.what()).find("truncation failure") != std::string::npos
                 || std::string(e.what()).find("Newton") != std::string::npos;
        }
        CHECK(threw);
    }
}

TEST_CASE("residual certificate on the reported pole")
{
    CircuitParams p;
    p.omega_j = 2.4;
    const auto pole = charfn::qubit_pole(p);
    CHECK(pole.residual < 1e-9 * p.omega_j * p.omega_j);
    CHECK(pole.alpha_j >= 0.0);
}

TEST_CASE("dispersive regime cross-check in its domain of validity")
{
    // strong mode suppression (chi_s = 0.1) concentrates both sums on the
    // fundamental; vanishing gamma removes the collective frequency
    // renormalization that would distort the bare detuning
    CircuitParams p;
    p.chi_g = 1e-5;
    p.chi_s_override = 0.1;
    const double nu1 = cqed::cf::resonances(p, 1)[1].nu_n;
    p.omega_j = 0.98 * nu1;
    const auto pole = charfn::qubit_pole(p);
    const auto series = cqed::dispersive::purcell_dispersive(p, 2000);
    const double ratio = pole.alpha_j / series.purcell_total();
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.10).scale(0.0));
}

TEST_CASE("kernel-form agreement at three probe points")
{
    // modal sum vs the contour form of the memory-kernel representation,
    // D(s) = s^2 + omega_j^2 [1 - gamma - gamma chi_s s^2 G(x0, x0, i s)]
    CircuitParams p;
    p.omega_j = 2.2;
    const auto f = charfn::build(p, 4000);
    for (double wp : {0.8, 2.0, 4.5}) {
        const complexd s{1e-6, -wp};
        const complexd dm = f.evaluate(s);
        const complexd gis = cqed::greens::green_direct(p, p.x0, p.x0, I * s);
        const complexd dk = s * s + p.omega_j * p.omega_j
                          * (1.0 - p.gamma() - p.gamma() * p.chi_s() * s * s * gis);
        const double scale = std::norm(s) + p.omega_j * p.omega_j;
        CHECK(std::abs(dm - dk) / scale < 1e-3);
    }
}

TEST_CASE("resonator poles")
{
    SUBCASE("decoupling limit: poles approach the bare roots") {
        CircuitParams p;
        p.chi_g = 1e-3;
        p.omega_j = 2.0;
        const auto f = charfn::build(p, 50);
        const auto& d = f.modal_data();
        const auto poles = charfn::resonator_poles(f, 5);
        REQUIRE(poles.size() == 5);
        for (int n = 0; n < 5; ++n) {
            const double kappa = 0.5 * d.two_kappa[n];
            const double osc = std::sqrt(d.omega2[n] - kappa * kappa);
            // displacement of the resonator-like zero scales with g_n^2
            CHECK(std::abs(poles[n] - complexd(-kappa, -osc)) < 1e-4);
            // backward-error certificate: near the pole-zero quasi-degeneracy
            // |D'| is enormous, so the absolute residual floor is |D'| ulp(|p|)
            CHECK(std::abs(f.evaluate(poles[n]))
                  < 1e-12 * std::abs(f.derivative(poles[n])) * (1.0 + std::abs(poles[n])));
        }
    }
    SUBCASE("single-mode truncation matches the two-oscillator closed form") {
        CircuitParams p;
        p.chi_g = 0.02;
        p.omega_j = 3.0;
        const auto f = charfn::build_lossless(p, 1, charfn::TailMode::none);
        const auto& d = f.modal_data();
        const double w1 = std::sqrt(d.omega2[0]);
        const double g1 = 0.5 * std::sqrt(d.weight[0] * p.omega_j / w1);
        const auto ref = oracle::two_mode(p.omega_j, w1, g1);
        const complexd lower = charfn::find_pole(f, -I * ref.beta_minus * 1.02);
        const complexd upper = charfn::find_pole(f, -I * ref.beta_plus * 0.98);
        CHECK(-lower.imag() == doctest::Approx(ref.beta_minus).epsilon(1e-12));
        CHECK(-upper.imag() == doctest::Approx(ref.beta_plus).epsilon(1e-12));
    }
    SUBCASE("avoided crossing: minimum splitting approaches 2 g_1") {
        CircuitParams p;
        p.chi_g = 0.02;
        const auto f0 = charfn::build_lossless(p, 1, charfn::TailMode::none);
        const auto& d = f0.modal_data();
        const double w1 = std::sqrt(d.omega2[0]);
        const double g_at = 0.5 * std::sqrt(d.weight[0] * w1 / w1);  // g at omega_j = w1
        double min_split = 1e9;
        for (double wj = 0.9 * w1; wj <= 1.1 * w1; wj += w1 / 400.0) {
            const auto f = f0.with_omega_j(wj);
            const auto ref = oracle::two_mode(wj, w1, 0.5 * std::sqrt(d.weight[0] * wj / w1));
            const complexd lower = charfn::find_pole(f, -I * ref.beta_minus);
            const complexd upper = charfn::find_pole(f, -I * ref.beta_plus);
            min_split = std::min(min_split, std::abs(lower.imag() - upper.imag()));
        }
        const auto ref = oracle::two_mode(w1, w1, g_at);
        CHECK(min_split == doctest::Approx(ref.beta_plus - ref.beta_minus).epsilon(0.02));
        CHECK(min_split == doctest::Approx(2.0 * g_at).epsilon(0.05));
    }
}

TEST_CASE("sweep")
{
    CircuitParams p;
    const double nu1 = cqed::cf::resonances(p, 1)[1].nu_n;
    SUBCASE("a one-point grid reduces to the fixed-truncation pole") {
        p.omega_j = 2.1;
        const auto rows = charfn::sweep_qubit_frequency(p, {2.1}, 800);
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].ok);
        const auto f = charfn::build(p, 800);
        const auto pole = charfn::qubit_pole_fixed(
            f, -I * 2.1 * std::sqrt(1.0 - p.gamma()));
        CHECK(rows[0].beta_j == doctest::Approx(pole.beta_j).epsilon(1e-12));
        CHECK(rows[0].alpha_j == doctest::Approx(pole.alpha_j).epsilon(1e-9));
    }
    SUBCASE("warm-started and cold-seeded parallel sweeps agree off crossings") {
        std::vector<double> grid;
        for (int i = 0; i < 24; ++i) grid.push_back(0.5 * nu1 + 0.02 * nu1 * i);
        const auto warm = charfn::sweep_qubit_frequency(p, grid, 600, 1);
        const auto cold = charfn::sweep_qubit_frequency(p, grid, 600, 4);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            REQUIRE(warm[i].ok);
            REQUIRE(cold[i].ok);
            CHECK(warm[i].beta_j == doctest::Approx(cold[i].beta_j).epsilon(1e-9));
        }
    }
    SUBCASE("alpha stays finite across the fundamental (no fake kink)") {
        p.chi_g = 0.1;
        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i) grid.push_back((0.5 + 1.5 * i / 60.0) * nu1);
        const auto rows = charfn::sweep_qubit_frequency(p, grid, 1500);
        for (const auto& r : rows) {
            REQUIRE(r.ok);
            CHECK(std::isfinite(r.alpha_j));
            CHECK(r.alpha_j >= 0.0);
            CHECK(r.alpha_j < 1.0);
        }
    }
}
