#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "loewner_ito/herglotz.hpp"
#include "loewner_ito/loewner_flow.hpp"
#include "loewner_ito/stochastic_paths.hpp"
#include "loewner_ito/tau_driver.hpp"

namespace loewner_ito {

/// Coefficients of d psi = drift dt + sum_j diffusion_j dB_j.
struct DiffusionCoefficients {
    Complex drift;
    Eigen::VectorXcd diffusion;
};

/// psi = phi / tau(y) = phi exp(-i kappa . y) for the exponential driver.
template <typename DerivedY, typename DerivedK>
std::complex<typename DerivedY::Scalar> canonical_substitution(
    std::complex<typename DerivedY::Scalar> phi, const Eigen::MatrixBase<DerivedY>& y,
    const Eigen::MatrixBase<DerivedK>& kappa)
{
    using Scalar = typename DerivedY::Scalar;
    return phi * std::polar(Scalar(1), -kappa.dot(y));
}

/// Drift of the diffusion for an exponential driver:
/// -|kappa|^2 psi / 2 + (psi - 1)^2 p~(psi).
template <typename DerivedK>
Complex exponential_drift(Complex psi, const Eigen::MatrixBase<DerivedK>& kappa,
                          const HerglotzSpec& p)
{
    const Complex u = psi - 1.0;
    return (u * u * evaluate(p, psi)) + (-0.5 * kappa.squaredNorm()) * psi;
}

/// Closed-form coefficients for an exponential driver; diffusion_j = -i kappa_j psi.
template <typename DerivedK>
DiffusionCoefficients exponential_coefficients(Complex psi, const Eigen::MatrixBase<DerivedK>& kappa,
                                               const HerglotzSpec& p)
{
    return {exponential_drift(psi, kappa, p), Complex{0.0, -1.0} * psi * kappa.template cast<Complex>()};
}

/// Coefficients of d(phi / tau(B)) at the joint state (phi, y) for an arbitrary
/// driver, from Ito's product rule with 1/tau = exp(-log tau):
///   drift       = (1 - psi)^2 p~(psi) + psi / 2 * sum_j (g_j^2 - g_jj)
///   diffusion_j = -psi g_j
/// where g and g_jj are the gradient and Hessian diagonal of log tau at y.
DiffusionCoefficients effective_coefficients(Complex phi, const Eigen::VectorXd& y,
                                             const TauDriver& d, const HerglotzSpec& p,
                                             double fd_step = default_fd_step);

/// One Euler-Maruyama step of the exponential-driver diffusion:
/// psi + (-|kappa|^2 psi / 2 + (psi - 1)^2 p~(psi)) h - i psi (kappa . dB).
template <typename DerivedK, typename DerivedB>
Complex sde_step(Complex psi, const Eigen::MatrixBase<DerivedK>& kappa, const HerglotzSpec& p,
                 double h, const Eigen::MatrixBase<DerivedB>& dB)
{
    const Complex noise = Complex{0.0, -1.0} * psi * kappa.dot(dB);
    return psi + exponential_drift(psi, kappa, p) * h + noise;
}

/// Euler-Maruyama on the exact increments of `path`.
Trajectory integrate_sde(Complex z, const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                         const BrownianPath& path);

/// Final state of integrate_sde without storing the trajectory; empty on exit.
std::optional<Complex> sde_endpoint(Complex z, const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                    const BrownianPath& path);

struct ConvergenceLevel {
    double h;
    double rms_discrepancy;
    std::size_t excluded;
    std::size_t path_count;
};

struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;
    std::optional<double> estimated_order; // absent when fewer than two levels have nonzero error
};

/// Shared-noise comparison of the substituted randomized chain (Euler) against
/// the Euler-Maruyama diffusion, over `n_levels` dyadic levels starting at the
/// ensemble's grid. Paths exiting on either side at a level are excluded there.
ConvergenceReport verify_transform(Complex z, const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                   const BrownianEnsemble& ensemble, std::size_t n_levels,
                                   unsigned threads = 1);

/// Least-squares slope of log(error) against log(h) over levels with error > 0.
std::optional<double> estimate_order(const std::vector<ConvergenceLevel>& levels);

} // namespace loewner_ito
