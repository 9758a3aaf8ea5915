#include "loewner_ito/ito_transform.hpp"

#include <cmath>

#include "loewner_ito/errors.hpp"
#include "loewner_ito/parallel.hpp"

namespace loewner_ito {

DiffusionCoefficients effective_coefficients(Complex phi, const Eigen::VectorXd& y,
                                             const TauDriver& d, const HerglotzSpec& p,
                                             double fd_step)
{
    const Complex tau = evaluate_tau(d, y);
    const Complex psi = phi * std::conj(tau);
    if (!(std::abs(psi) < 1.0))
        throw DomainError("effective coefficients: |phi / tau(y)| must be < 1");

    const LogDerivatives g = log_derivatives(d, y, fd_step);
    const Eigen::VectorXcd grad_sq = g.gradient.array().square();
    const Complex curvature = (grad_sq - g.hessian.diagonal()).sum();

    const Complex u = 1.0 - psi;
    return {u * u * evaluate(p, psi) + 0.5 * psi * curvature, -psi * g.gradient};
}

namespace {

constexpr double max_modulus = 1.0 - boundary_epsilon;

bool inside(Complex psi)
{
    return std::isfinite(psi.real()) && std::isfinite(psi.imag()) && std::abs(psi) <= max_modulus;
}

void check_sde_inputs(Complex z, const Eigen::VectorXd& kappa, const BrownianPath& path)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("sde: initial point must satisfy |z| < 1");
    if (path.n_dims() != kappa.size())
        throw SizingError("sde: path dimension does not match kappa");
}

} // namespace

Trajectory integrate_sde(Complex z, const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                         const BrownianPath& path)
{
    check_sde_inputs(z, kappa, path);
    const TimeGrid& grid = path.grid();
    const Eigen::MatrixXd& B = path.values();
    const double h = grid.step();

    Trajectory traj{grid, {}, std::nullopt};
    traj.states.reserve(grid.n_points());
    traj.states.push_back(z);
    if (!inside(z)) {
        traj.exit = BoundaryExit{1, "initial point inside the boundary layer"};
        return traj;
    }
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(grid.n_steps()); ++j) {
        const Complex next = sde_step(traj.states.back(), kappa, p, h, B.col(j + 1) - B.col(j));
        if (!inside(next)) {
            traj.exit = BoundaryExit{static_cast<std::size_t>(j) + 1, "state reached the boundary layer"};
            break;
        }
        traj.states.push_back(next);
    }
    return traj;
}

std::optional<Complex> sde_endpoint(Complex z, const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                    const BrownianPath& path)
{
    check_sde_inputs(z, kappa, path);
    const Eigen::MatrixXd& B = path.values();
    const double h = path.grid().step();
    Complex psi = z;
    if (!inside(psi))
        return std::nullopt;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(path.grid().n_steps()); ++j) {
        psi = sde_step(psi, kappa, p, h, B.col(j + 1) - B.col(j));
        if (!inside(psi))
            return std::nullopt;
    }
    return psi;
}

std::optional<double> estimate_order(const std::vector<ConvergenceLevel>& levels)
{
    std::vector<double> xs, ys;
    for (const ConvergenceLevel& l : levels) {
        if (l.rms_discrepancy > 0.0 && std::isfinite(l.rms_discrepancy)) {
            xs.push_back(std::log(l.h));
            ys.push_back(std::log(l.rms_discrepancy));
        }
    }
    if (xs.size() < 2)
        return std::nullopt;
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd design(n, 2);
    design.col(0) = Eigen::Map<const Eigen::VectorXd>(xs.data(), n);
    design.col(1).setOnes();
    const Eigen::VectorXd fit =
        design.colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXd>(ys.data(), n));
    return fit(0);
}

ConvergenceReport verify_transform(Complex z, const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                   const BrownianEnsemble& ensemble, std::size_t n_levels,
                                   unsigned threads)
{
    if (n_levels == 0)
        throw SizingError("verify_transform: at least one level is required");
    if (static_cast<std::size_t>(kappa.size()) != ensemble.n_dims())
        throw SizingError("verify_transform: kappa dimension does not match the ensemble");

    const TauDriver driver = TauDriver::exponential(kappa);
    ConvergenceReport report;
    BrownianEnsemble current = ensemble;

    for (std::size_t level = 0; level < n_levels; ++level) {
        if (level > 0)
            current = refine(current, threads);

        // Per-path max-over-time discrepancy; negative marks an excluded path.
        std::vector<double> discrepancy(current.n_paths(), -1.0);
        parallel_for(current.n_paths(), threads, [&](std::size_t i) {
            const BrownianPath path = current.path(i);
            const Trajectory ode = integrate_randomized(z, p, driver, path, Scheme::Euler);
            const Trajectory sde = integrate_sde(z, kappa, p, path);
            if (!ode.completed() || !sde.completed())
                return;
            double worst = 0.0;
            for (std::size_t j = 0; j < ode.states.size(); ++j) {
                const Complex psi = canonical_substitution(ode.states[j], path.value(j), kappa);
                worst = std::max(worst, std::abs(psi - sde.states[j]));
            }
            discrepancy[i] = worst;
        });

        ConvergenceLevel out{current.grid().step(), 0.0, 0, 0};
        double sum_sq = 0.0;
        for (double d : discrepancy) {
            if (d < 0.0) {
                ++out.excluded;
                continue;
            }
            sum_sq += d * d;
            ++out.path_count;
        }
        out.rms_discrepancy = out.path_count > 0
                                  ? std::sqrt(sum_sq / static_cast<double>(out.path_count))
                                  : std::nan("");
        report.levels.push_back(out);
    }
    report.estimated_order = estimate_order(report.levels);
    return report;
}

} // namespace loewner_ito
