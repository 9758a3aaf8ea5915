#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loewner_ito/herglotz.hpp"
#include "loewner_ito/tau_driver.hpp"

namespace loewner_ito {

/// Outcome of the log-tau Hessian test. A driver is admissible when log tau is
/// affine on the grid: every Hessian entry vanishes and the gradient is constant.
/// Diagonal and mixed residuals are reported separately; a vanishing diagonal
/// alone (each tau_i^2 = tau tau_ii) does not rule out terms like y1 y2.
struct ClassifierReport {
    bool admissible = false;
    std::optional<Eigen::VectorXd> kappa; // Im of the constant log-gradient
    double max_diagonal_residual = 0.0;
    double max_mixed_residual = 0.0;
    double kappa_variation = 0.0;
    double tolerance = 0.0;
    bool finite_difference = false;
    std::vector<Eigen::VectorXd> grid;
};

inline constexpr double analytic_tolerance = 1e-10;
inline constexpr double finite_difference_tolerance = 1e-4;

inline double default_tolerance(const TauDriver& d)
{
    return d.is_sampled() ? finite_difference_tolerance : analytic_tolerance;
}

ClassifierReport classify(const TauDriver& d, const std::vector<Eigen::VectorXd>& grid, double tol,
                          double fd_step = default_fd_step);

struct FiberVariation {
    double max_variation;       // over drift and every diffusion entry
    double drift_variation;
    double diffusion_variation; // max over entries
    bool uninformative;         // psi0 = 0: every psi-proportional term vanishes
};

/// Max pairwise modulus difference of the effective coefficients over the
/// fiber {(psi0 tau(y), y) : y in y_grid}.
FiberVariation fiber_variation(const TauDriver& d, const HerglotzSpec& p, Complex psi0,
                               const std::vector<Eigen::VectorXd>& y_grid,
                               double fd_step = default_fd_step);

/// The 2^n vertices of {0, 1}^n.
std::vector<Eigen::VectorXd> unit_cube_grid(Eigen::Index n);

/// Cartesian product axis^n.
std::vector<Eigen::VectorXd> product_grid(const std::vector<double>& axis, Eigen::Index n);

} // namespace loewner_ito
