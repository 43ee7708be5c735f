#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cqed/cc_modes.hpp"
#include "cqed/charfn.hpp"
#include "cqed/hybridize.hpp"
#include "oracles.hpp"

using cqed::CircuitParams;
namespace hybrid = cqed::hybrid;
using complexd = std::complex<double>;

TEST_CASE("decoupled circuit is untouched by the transformation")
{
    CircuitParams p;
    p.chi_g = 0.0;
    p.omega_j = 2.7;
    const auto spec = hybrid::diagonalize(p, 40);
    CHECK(spec.beta_j == doctest::Approx(p.omega_j).epsilon(1e-14));
    CHECK(spec.u_j == doctest::Approx(1.0).epsilon(1e-14));
    for (double u : spec.u_n) CHECK(std::abs(u) < 1e-12);
}

TEST_CASE("two-oscillator case equals the quadratic closed form")
{
    CircuitParams p;
    p.chi_g = 0.05;
    p.omega_j = 3.2;
    const auto spec = hybrid::diagonalize(p, 1);
    const auto m = cqed::cc::modes(p, 1);
    const auto ref = oracle::two_mode(p.omega_j, m[0].omega_n, m[0].g_n);
    const double lo = std::min(spec.beta_all[0], spec.beta_all[1]);
    const double hi = std::max(spec.beta_all[0], spec.beta_all[1]);
    CHECK(lo == doctest::Approx(ref.beta_minus).epsilon(1e-12));
    CHECK(hi == doctest::Approx(ref.beta_plus).epsilon(1e-12));
}

TEST_CASE("overlap margin flags ambiguous branch labels near a crossing")
{
    CircuitParams clear;
    clear.chi_g = 0.05;
    clear.omega_j = 2.0;  // dressed branch far from every mode
    CircuitParams crossing = clear;
    // the collective renormalization places the qubit-like branch near
    // omega_j sqrt(1 - gamma/(1+chi_s)); park it on the fundamental
    const double load = std::sqrt(1.0 - crossing.gamma() / (1.0 + crossing.chi_s()));
    crossing.omega_j = cqed::cc::eigenfrequencies(clear, 1)[0] / load;
    const auto far = hybrid::diagonalize(clear, 32);
    const auto near = hybrid::diagonalize(crossing, 32);
    CHECK(far.overlap_margin > 0.5);
    CHECK(near.overlap_margin < 0.5);
}

TEST_CASE("orthonormal transformation")
{
    CircuitParams p;
    p.chi_g = 0.1;
    const auto spec = hybrid::diagonalize(p, 64);
    double u2 = spec.u_j * spec.u_j;
    for (double u : spec.u_n) u2 += u * u;
    CHECK(u2 == doctest::Approx(1.0).epsilon(1e-12));

    // round-trip a random vector through V^T then V
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    const int dim = static_cast<int>(spec.beta_all.size());
    std::vector<double> v(dim), w(dim, 0.0), back(dim, 0.0);
    for (auto& x : v) x = ur(rng);
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) w[k] += spec.vectors[k][l] * v[l];
    for (int l = 0; l < dim; ++l)
        for (int k = 0; k < dim; ++k) back[l] += spec.vectors[k][l] * w[k];
    for (int l = 0; l < dim; ++l) CHECK(back[l] == doctest::Approx(v[l]).epsilon(1e-12));
}

TEST_CASE("hybridized frequencies interlace the resonator ladder")
{
    CircuitParams p;
    p.chi_g = 0.1;
    p.omega_j = 4.4;
    const auto spec = hybrid::diagonalize(p, 32);  // throws internally if violated
    const auto m = cqed::cc::modes(p, 32);
    for (int k = 0; k < 32; ++k) {
        CHECK(spec.beta_all[k] <= m[k].omega_n * (1.0 + 1e-12));
        CHECK(m[k].omega_n <= spec.beta_all[k + 1] * (1.0 + 1e-12));
    }
}

TEST_CASE("lossless spectrum agrees with the characteristic-function pole")
{
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> cg(0.005, 0.15), wj(1.0, 9.0), xs(0.0, 0.6);
    for (int draw = 0; draw < 6; ++draw) {
        CircuitParams p;
        p.chi_g = cg(rng);
        p.omega_j = wj(rng);
        p.x0 = draw < 3 ? 0.0 : xs(rng);
        const int N = 192;
        const auto spec = hybrid::diagonalize(p, N);
        const auto f = cqed::charfn::build_lossless(p, N, cqed::charfn::TailMode::none);
        const auto pole = cqed::charfn::qubit_pole_fixed(
            f, complexd{0.0, -p.omega_j * std::sqrt(1.0 - p.gamma())});
        CHECK(std::abs(spec.beta_j - pole.beta_j) < 1e-6);
        CHECK(std::abs((spec.beta_j - p.omega_j) - pole.lamb_shift) < 1e-6);
    }
}

TEST_CASE("MSPT correction")
{
    SUBCASE("epsilon = 0 leaves the frequency untouched") {
        CircuitParams p;
        p.epsilon = 0.0;
        const auto spec = hybrid::diagonalize(p, 32);
        const auto corr = hybrid::mspt_correction(spec, p);
        CHECK(corr.beta_j_corrected == spec.beta_j);
    }
    SUBCASE("free Duffing limit is exact") {
        CircuitParams p;
        p.chi_g = 0.0;
        p.omega_j = 3.3;
        p.epsilon = 0.1;
        const auto spec = hybrid::diagonalize(p, 32);
        const auto corr = hybrid::mspt_correction(spec, p);
        const double expected = p.omega_j * (1.0 - std::sqrt(2.0) * p.epsilon / 4.0);
        CHECK(corr.beta_j_corrected == doctest::Approx(expected).epsilon(1e-13));
        CHECK(corr.h_qubit == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("correction is a softening (negative) shift") {
        CircuitParams p;
        p.chi_g = 0.1;
        const auto spec = hybrid::diagonalize(p, 64);
        CHECK(hybrid::mspt_correction(spec, p).correction < 0.0);
    }
    SUBCASE("magnitude grows with photon occupation") {
        CircuitParams p;
        p.chi_g = 0.1;
        const auto spec = hybrid::diagonalize(p, 64);
        double prev = 0.0;
        for (double nbar : {0.0, 0.5, 1.0, 2.0}) {
            hybrid::StateMoments st;
            st.mode_x2 = st.mode_y2 = 2.0 * nbar + 1.0;  // thermal second moments
            const double mag = -hybrid::mspt_correction(spec, p, st).correction;
            CHECK(mag > prev);
            prev = mag;
        }
    }
    SUBCASE("vacuum mode-sum toggle shifts by a finite amount") {
        CircuitParams p;
        p.chi_g = 0.1;
        const auto spec = hybrid::diagonalize(p, 64);
        const auto with = hybrid::mspt_correction(spec, p, {}, true);
        const auto without = hybrid::mspt_correction(spec, p, {}, false);
        CHECK(with.beta_j_corrected < without.beta_j_corrected);
        CHECK(std::isfinite(with.beta_j_corrected - without.beta_j_corrected));
    }
    SUBCASE("invalid moments are rejected") {
        CircuitParams p;
        const auto spec = hybrid::diagonalize(p, 8);
        hybrid::StateMoments st;
        st.qubit_x2 = -1.0;
        CHECK_THROWS(hybrid::mspt_correction(spec, p, st));
    }
}
