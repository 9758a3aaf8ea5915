#include "loewner_ito/loewner_flow.hpp"

#include <cmath>

#include "loewner_ito/errors.hpp"

namespace loewner_ito {

namespace {

constexpr double max_modulus = 1.0 - boundary_epsilon;

struct LeftDisk {};

// Right-hand side of the classical chain; throws LeftDisk for stage
// arguments outside the integration disk.
Complex classical_rhs(const HerglotzSpec& p, Complex phi)
{
    if (!(std::abs(phi) <= max_modulus))
        throw LeftDisk{};
    return -phi * evaluate(p, phi);
}

// (tau - phi)^2 / tau * p~(phi / tau) written as tau (1 - psi)^2 p~(psi),
// psi = phi conj(tau), valid since |tau| = 1.
Complex randomized_rhs(const HerglotzSpec& p, Complex tau, Complex phi)
{
    const Complex psi = phi * std::conj(tau);
    if (!(std::abs(psi) <= max_modulus))
        throw LeftDisk{};
    const Complex u = 1.0 - psi;
    return tau * (u * u * evaluate(p, psi));
}

void check_start(Complex z)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("loewner flow: initial point must satisfy |z| < 1");
}

// Shared stepping loop. `advance(j, phi)` returns the state at t_{j+1}.
template <typename Advance>
Trajectory run(Complex z, const TimeGrid& grid, Advance&& advance)
{
    Trajectory traj{grid, {}, std::nullopt};
    traj.states.reserve(grid.n_points());
    traj.states.push_back(z);
    if (std::abs(z) > max_modulus) {
        traj.exit = BoundaryExit{1, "initial point inside the boundary layer"};
        return traj;
    }
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        Complex next;
        try {
            next = advance(j, traj.states.back());
        } catch (const LeftDisk&) {
            traj.exit = BoundaryExit{j + 1, "stage argument left the disk"};
            return traj;
        }
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag()) ||
            std::abs(next) > max_modulus) {
            traj.exit = BoundaryExit{j + 1, "state reached the boundary layer"};
            return traj;
        }
        traj.states.push_back(next);
    }
    return traj;
}

} // namespace

Trajectory integrate_classical(Complex z, const HerglotzSpec& p, const TimeGrid& grid,
                               Scheme scheme)
{
    check_start(z);
    const double h = grid.step();
    auto f = [&](Complex phi) { return classical_rhs(p, phi); };

    return run(z, grid, [&](std::size_t, Complex phi) -> Complex {
        switch (scheme) {
        case Scheme::Euler:
            return phi + h * f(phi);
        case Scheme::Heun: {
            const Complex k1 = f(phi);
            const Complex k2 = f(phi + h * k1);
            return phi + 0.5 * h * (k1 + k2);
        }
        case Scheme::RK4:
        default: {
            const Complex k1 = f(phi);
            const Complex k2 = f(phi + 0.5 * h * k1);
            const Complex k3 = f(phi + 0.5 * h * k2);
            const Complex k4 = f(phi + h * k3);
            return phi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        }
    });
}

Trajectory integrate_randomized(Complex z, const HerglotzSpec& p, const TauDriver& d,
                                const BrownianPath& path, Scheme scheme)
{
    check_start(z);
    if (scheme == Scheme::RK4)
        throw InvariantError("randomized flow: only Euler and Heun schemes are supported");
    if (path.n_dims() != d.n_dims())
        throw SizingError("randomized flow: path dimension does not match the driver");

    const TimeGrid& grid = path.grid();
    const double h = grid.step();

    return run(z, grid, [&](std::size_t j, Complex phi) -> Complex {
        const Complex tau = evaluate_tau(d, path.value(j));
        const Complex k1 = randomized_rhs(p, tau, phi);
        if (scheme == Scheme::Euler)
            return phi + h * k1;
        const Complex k2 = randomized_rhs(p, tau, phi + h * k1);
        return phi + 0.5 * h * (k1 + k2);
    });
}

} // namespace loewner_ito
