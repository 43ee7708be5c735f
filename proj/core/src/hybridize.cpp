#include "cqed/hybridize.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "cqed/cc_modes.hpp"

namespace cqed::hybrid {

HybridizedSpectrum diagonalize(const CircuitParams& p, int modes)
{
    p.validate();
    if (modes < 1) throw std::invalid_argument("hybridize: modes must be >= 1");

    const auto cc_modes = cc::modes(p, modes);
    const int dim = modes + 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    M(0, 0) = p.omega_j * p.omega_j;
    for (int n = 0; n < modes; ++n) {
        const double wn = cc_modes[n].omega_n;
        M(n + 1, n + 1) = wn * wn;
        const double c = 2.0 * cc_modes[n].g_n * std::sqrt(p.omega_j * wn);
        M(0, n + 1) = M(n + 1, 0) = c;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hybridize: eigendecomposition failed");
    const auto& ev = solver.eigenvalues();
    const auto& V = solver.eigenvectors();
    if (ev(0) <= 0.0)
        throw std::runtime_error("hybridize: negative eigenvalue (overcoupled instability)");

    // eigenvalues of the arrowhead matrix strictly interlace the resonator
    // diagonal: lambda_k <= omega_k^2 <= lambda_{k+1}
    for (int k = 0; k < modes; ++k) {
        const double d = cc_modes[k].omega_n * cc_modes[k].omega_n;
        const double slack = 1e-9 * d;
        if (!(ev(k) <= d + slack && d <= ev(k + 1) + slack))
            throw std::runtime_error("hybridize: interlacing violated (numerical failure)");
    }

    HybridizedSpectrum spec;
    spec.beta_all.resize(dim);
    for (int k = 0; k < dim; ++k) spec.beta_all[k] = std::sqrt(ev(k));
    spec.bare_all.resize(dim);
    spec.bare_all[0] = p.omega_j;
    for (int n = 0; n < modes; ++n) spec.bare_all[n + 1] = cc_modes[n].omega_n;

    int kq = 0;
    for (int k = 1; k < dim; ++k)
        if (V(0, k) * V(0, k) > V(0, kq) * V(0, kq)) kq = k;
    double second = 0.0;
    for (int k = 0; k < dim; ++k)
        if (k != kq) second = std::max(second, V(0, k) * V(0, k));
    spec.qubit_branch = kq;
    spec.beta_j = spec.beta_all[kq];
    spec.u_j = std::abs(V(0, kq));
    spec.overlap_margin = V(0, kq) * V(0, kq) - second;
    spec.beta_n.reserve(modes);
    spec.u_n.reserve(modes);
    for (int k = 0; k < dim; ++k) {
        if (k == kq) continue;
        spec.beta_n.push_back(spec.beta_all[k]);
        spec.u_n.push_back(std::abs(V(0, k)));
    }

    spec.vectors.assign(dim, std::vector<double>(dim));
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
            spec.vectors[k][l] = V(l, k);  // vectors[k] is eigenvector k
    return spec;
}

MsptCorrection mspt_correction(const HybridizedSpectrum& spectrum, const CircuitParams& p,
                               const StateMoments& state, bool include_mode_sum)
{
    const int dim = static_cast<int>(spectrum.beta_all.size());
    const int modes = dim - 1;

    auto x2_of = [&](int l) {
        if (l == 0) return state.qubit_x2;
        if (!state.mode_x2_per.empty()) return state.mode_x2_per.at(l - 1);
        return state.mode_x2;
    };
    auto y2_of = [&](int l) {
        if (l == 0) return state.qubit_y2;
        if (!state.mode_y2_per.empty()) return state.mode_y2_per.at(l - 1);
        return state.mode_y2;
    };
    for (int l = 0; l < dim; ++l) {
        if (!(x2_of(l) >= 0.0) || !(y2_of(l) >= 0.0))
            throw std::invalid_argument("mspt: state second moments must be finite and >= 0");
    }

    // <H_k> = ( <Xbar_k^2> + <Ybar_k^2> )/4 via the canonical scaled transform:
    //   Xbar_k = sum_l V_lk sqrt(omega_l/beta_k) X_l,
    //   Ybar_k = sum_l V_lk sqrt(beta_k/omega_l) Y_l,
    // diagonal bare covariance assumed (product states).
    std::vector<double> h(dim);
    for (int k = 0; k < dim; ++k) {
        const double beta = spectrum.beta_all[k];
        double xb = 0.0, yb = 0.0;
        for (int l = 0; l < dim; ++l) {
            const double v2 = spectrum.vectors[k][l] * spectrum.vectors[k][l];
            const double wl = spectrum.bare_all[l];
            xb += v2 * wl * x2_of(l);
            yb += v2 * y2_of(l) / wl;
        }
        h[k] = 0.25 * (xb / beta + beta * yb);
    }

    const int kq = spectrum.qubit_branch;
    const double uj2 = spectrum.u_j * spectrum.u_j;
    double mode_sum = 0.0;
    if (include_mode_sum) {
        for (int k = 0; k < dim; ++k) {
            if (k == kq) continue;
            const double uk = spectrum.vectors[k][0];
            mode_sum += 2.0 * uj2 * uk * uk * h[k];
        }
    }
    const double shift = (std::sqrt(2.0) * p.epsilon / 4.0) * p.omega_j
                       * (uj2 * uj2 * h[kq] + mode_sum);

    MsptCorrection out;
    out.beta_j = spectrum.beta_j;
    out.beta_j_corrected = spectrum.beta_j - shift;
    out.correction = -shift;
    out.h_qubit = h[kq];
    (void)modes;
    return out;
}

} // namespace cqed::hybrid
