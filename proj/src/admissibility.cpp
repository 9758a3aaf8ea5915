#include "loewner_ito/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include "loewner_ito/errors.hpp"
#include "loewner_ito/ito_transform.hpp"

namespace loewner_ito {

ClassifierReport classify(const TauDriver& d, const std::vector<Eigen::VectorXd>& grid, double tol,
                          double fd_step)
{
    if (grid.empty())
        throw SizingError("classify: grid must be nonempty");
    if (!(tol > 0.0))
        throw InvariantError("classify: tolerance must be positive");

    ClassifierReport report;
    report.tolerance = tol;
    report.finite_difference = d.is_sampled();
    report.grid = grid;

    const Eigen::Index n = d.n_dims();
    std::optional<Eigen::VectorXcd> first_gradient;
    for (const Eigen::VectorXd& y : grid) {
        const LogDerivatives g = log_derivatives(d, y, fd_step);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double r = std::abs(g.hessian(i, j));
                double& slot = i == j ? report.max_diagonal_residual : report.max_mixed_residual;
                slot = std::max(slot, r);
            }
        }
        if (!first_gradient)
            first_gradient = g.gradient;
        else
            report.kappa_variation = std::max(
                report.kappa_variation, (g.gradient - *first_gradient).cwiseAbs().maxCoeff());
    }

    report.admissible = report.max_diagonal_residual <= tol && report.max_mixed_residual <= tol &&
                        report.kappa_variation <= tol;
    if (report.admissible)
        report.kappa = first_gradient->imag();
    return report;
}

FiberVariation fiber_variation(const TauDriver& d, const HerglotzSpec& p, Complex psi0,
                               const std::vector<Eigen::VectorXd>& y_grid, double fd_step)
{
    if (!(std::abs(psi0) < 1.0))
        throw DomainError("fiber variation: psi0 must satisfy |psi0| < 1");
    if (y_grid.empty())
        throw SizingError("fiber variation: grid must be nonempty");

    std::vector<DiffusionCoefficients> coeffs;
    coeffs.reserve(y_grid.size());
    for (const Eigen::VectorXd& y : y_grid)
        coeffs.push_back(effective_coefficients(psi0 * evaluate_tau(d, y), y, d, p, fd_step));

    FiberVariation out{0.0, 0.0, 0.0, psi0 == Complex{}};
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
        for (std::size_t b = a + 1; b < coeffs.size(); ++b) {
            out.drift_variation =
                std::max(out.drift_variation, std::abs(coeffs[a].drift - coeffs[b].drift));
            out.diffusion_variation =
                std::max(out.diffusion_variation,
                         (coeffs[a].diffusion - coeffs[b].diffusion).cwiseAbs().maxCoeff());
        }
    }
    out.max_variation = std::max(out.drift_variation, out.diffusion_variation);
    return out;
}

std::vector<Eigen::VectorXd> product_grid(const std::vector<double>& axis, Eigen::Index n)
{
    if (axis.empty() || n < 1)
        throw SizingError("product grid: axis and dimension must be nonempty");
    std::vector<Eigen::VectorXd> out;
    std::vector<std::size_t> index(static_cast<std::size_t>(n), 0);
    while (true) {
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i)
            y(i) = axis[index[static_cast<std::size_t>(i)]];
        out.push_back(std::move(y));
        std::size_t k = 0;
        while (k < index.size() && ++index[k] == axis.size())
            index[k++] = 0;
        if (k == index.size())
            break;
    }
    return out;
}

std::vector<Eigen::VectorXd> unit_cube_grid(Eigen::Index n)
{
    return product_grid({0.0, 1.0}, n);
}

} // namespace loewner_ito
