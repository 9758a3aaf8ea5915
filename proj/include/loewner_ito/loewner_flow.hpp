#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "loewner_ito/herglotz.hpp"
#include "loewner_ito/stochastic_paths.hpp"
#include "loewner_ito/tau_driver.hpp"
#include "loewner_ito/time_grid.hpp"

namespace loewner_ito {

/// Integration stops once the (normalized) state modulus exceeds 1 - boundary_epsilon.
inline constexpr double boundary_epsilon = 1e-6;

enum class Scheme { Euler, Heun, RK4 };

struct BoundaryExit {
    std::size_t step; // first grid index without a recorded state
    std::string reason;
};

/// States on a time grid, truncated at the first boundary approach.
struct Trajectory {
    TimeGrid grid;
    std::vector<Complex> states;
    std::optional<BoundaryExit> exit;

    bool completed() const { return !exit.has_value(); }
    const Complex& final_state() const { return states.back(); }
};

/// dphi/dt = -phi p~(phi), phi_0 = z.
Trajectory integrate_classical(Complex z, const HerglotzSpec& p, const TimeGrid& grid,
                               Scheme scheme = Scheme::RK4);

/// dphi/dt = (tau - phi)^2 / tau * p~(phi / tau) with tau = tau(B_{t_j}) frozen
/// at the left endpoint of each step. Euler or Heun only.
Trajectory integrate_randomized(Complex z, const HerglotzSpec& p, const TauDriver& d,
                                const BrownianPath& path, Scheme scheme = Scheme::Euler);

} // namespace loewner_ito
