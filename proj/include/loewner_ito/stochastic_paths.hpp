#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "loewner_ito/time_grid.hpp"

namespace loewner_ito {

/// Read-only view of one n-dimensional Brownian path sampled on a grid.
/// Column j of values() is B at t_j; column 0 is zero for generated paths.
class BrownianPath {
public:
    BrownianPath(const Eigen::MatrixXd& values, const TimeGrid& grid);

    const Eigen::MatrixXd& values() const { return *values_; }
    const TimeGrid& grid() const { return grid_; }
    Eigen::Index n_dims() const { return values_->rows(); }

    auto value(std::size_t j) const { return values_->col(static_cast<Eigen::Index>(j)); }
    /// B(t_{j+1}) - B(t_j)
    Eigen::VectorXd increment(std::size_t j) const
    {
        const auto k = static_cast<Eigen::Index>(j);
        return values_->col(k + 1) - values_->col(k);
    }

private:
    const Eigen::MatrixXd* values_;
    TimeGrid grid_;
};

/// Seeded ensemble of n_paths independent n_dims-dimensional standard
/// Brownian motions on a uniform grid. Immutable once built.
///
/// Path values are stored (not increments): refinement keeps the coarse
/// values bit-identical and increments are exact differences of stored values.
class BrownianEnsemble {
public:
    std::size_t n_dims() const { return n_dims_; }
    std::size_t n_paths() const { return paths_.size(); }
    const TimeGrid& grid() const { return grid_; }
    std::uint64_t seed() const { return seed_; }
    /// Number of dyadic refinements applied since generation.
    unsigned level() const { return level_; }

    BrownianPath path(std::size_t i) const { return BrownianPath(paths_.at(i), grid_); }
    const Eigen::MatrixXd& values(std::size_t i) const { return paths_.at(i); }

    friend BrownianEnsemble generate_ensemble(std::size_t, const TimeGrid&, std::size_t,
                                              std::uint64_t, unsigned);
    friend BrownianEnsemble refine(const BrownianEnsemble&, unsigned);
    friend BrownianEnsemble read_increments(std::istream&, std::size_t, const TimeGrid&,
                                            std::size_t, std::uint64_t);

private:
    BrownianEnsemble(std::size_t n_dims, const TimeGrid& grid, std::uint64_t seed, unsigned level)
        : n_dims_(n_dims), grid_(grid), seed_(seed), level_(level) {}

    std::size_t n_dims_;
    TimeGrid grid_;
    std::uint64_t seed_;
    unsigned level_;
    std::vector<Eigen::MatrixXd> paths_; // n_dims x n_points each
};

/// Draws every increment as Normal(0, h) from a stream seeded by
/// (seed, path index, dimension), so the result does not depend on `threads`.
BrownianEnsemble generate_ensemble(std::size_t n_dims, const TimeGrid& grid, std::size_t n_paths,
                                   std::uint64_t seed, unsigned threads = 1);

/// Halves the step. Even-index values are copied; each midpoint is a Brownian
/// bridge sample (a + b) / 2 + sqrt(h) / 2 * Z.
BrownianEnsemble refine(const BrownianEnsemble& ensemble, unsigned threads = 1);

/// Little-endian float64 increments in (path, dim, step) order.
void write_increments(std::ostream& out, const BrownianEnsemble& ensemble);

/// Replays a dump written by write_increments; path values are prefix sums.
BrownianEnsemble read_increments(std::istream& in, std::size_t n_dims, const TimeGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed);

} // namespace loewner_ito
