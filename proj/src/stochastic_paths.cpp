#include "loewner_ito/stochastic_paths.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>

#include "loewner_ito/parallel.hpp"

namespace loewner_ito {

namespace {

std::mt19937_64 substream(std::uint64_t seed, std::size_t path, std::size_t dim, unsigned level)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
                      static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(level)};
    return std::mt19937_64(seq);
}

std::uint64_t to_little_endian(std::uint64_t bits)
{
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    return bits;
}

} // namespace

BrownianPath::BrownianPath(const Eigen::MatrixXd& values, const TimeGrid& grid)
    : values_(&values), grid_(grid)
{
    if (values.cols() != static_cast<Eigen::Index>(grid.n_points()) || values.rows() < 1)
        throw SizingError("brownian path: value matrix does not match the time grid");
}

BrownianEnsemble generate_ensemble(std::size_t n_dims, const TimeGrid& grid, std::size_t n_paths,
                                   std::uint64_t seed, unsigned threads)
{
    if (n_dims == 0 || n_paths == 0)
        throw SizingError("ensemble: n_dims and n_paths must be positive");

    BrownianEnsemble e(n_dims, grid, seed, 0);
    e.paths_.assign(n_paths, Eigen::MatrixXd());
    const double sd = std::sqrt(grid.step());
    const auto n_points = static_cast<Eigen::Index>(grid.n_points());

    parallel_for(n_paths, threads, [&](std::size_t p) {
        Eigen::MatrixXd values(static_cast<Eigen::Index>(n_dims), n_points);
        for (std::size_t d = 0; d < n_dims; ++d) {
            auto rng = substream(seed, p, d, 0);
            std::normal_distribution<double> normal;
            const auto row = static_cast<Eigen::Index>(d);
            values(row, 0) = 0.0;
            for (Eigen::Index j = 1; j < n_points; ++j)
                values(row, j) = values(row, j - 1) + sd * normal(rng);
        }
        e.paths_[p] = std::move(values);
    });
    return e;
}

BrownianEnsemble refine(const BrownianEnsemble& coarse, unsigned threads)
{
    const unsigned level = coarse.level_ + 1;
    BrownianEnsemble fine(coarse.n_dims_, coarse.grid_.refined(), coarse.seed_, level);
    fine.paths_.assign(coarse.n_paths(), Eigen::MatrixXd());
    const double sd = 0.5 * std::sqrt(coarse.grid_.step());
    const auto n_steps = static_cast<Eigen::Index>(coarse.grid_.n_steps());

    parallel_for(coarse.n_paths(), threads, [&](std::size_t p) {
        const Eigen::MatrixXd& src = coarse.paths_[p];
        Eigen::MatrixXd dst(src.rows(), 2 * n_steps + 1);
        for (Eigen::Index d = 0; d < src.rows(); ++d) {
            auto rng = substream(coarse.seed_, p, static_cast<std::size_t>(d), level);
            std::normal_distribution<double> normal;
            dst(d, 0) = src(d, 0);
            for (Eigen::Index j = 0; j < n_steps; ++j) {
                const double a = src(d, j);
                const double b = src(d, j + 1);
                dst(d, 2 * j + 1) = 0.5 * (a + b) + sd * normal(rng);
                dst(d, 2 * j + 2) = b;
            }
        }
        fine.paths_[p] = std::move(dst);
    });
    return fine;
}

void write_increments(std::ostream& out, const BrownianEnsemble& e)
{
    const std::size_t n_steps = e.grid().n_steps();
    for (std::size_t p = 0; p < e.n_paths(); ++p) {
        const Eigen::MatrixXd& v = e.values(p);
        for (Eigen::Index d = 0; d < v.rows(); ++d) {
            for (std::size_t j = 0; j < n_steps; ++j) {
                const auto k = static_cast<Eigen::Index>(j);
                const double inc = v(d, k + 1) - v(d, k);
                const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(inc));
                char buf[8];
                std::memcpy(buf, &bits, sizeof buf);
                out.write(buf, sizeof buf);
            }
        }
    }
}

BrownianEnsemble read_increments(std::istream& in, std::size_t n_dims, const TimeGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed)
{
    if (n_dims == 0 || n_paths == 0)
        throw SizingError("ensemble: n_dims and n_paths must be positive");

    BrownianEnsemble e(n_dims, grid, seed, 0);
    const auto n_points = static_cast<Eigen::Index>(grid.n_points());
    e.paths_.reserve(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) {
        Eigen::MatrixXd values(static_cast<Eigen::Index>(n_dims), n_points);
        for (Eigen::Index d = 0; d < values.rows(); ++d) {
            values(d, 0) = 0.0;
            for (Eigen::Index j = 1; j < n_points; ++j) {
                char buf[8];
                if (!in.read(buf, sizeof buf))
                    throw SizingError("increment dump is shorter than the requested ensemble");
                std::uint64_t bits;
                std::memcpy(&bits, buf, sizeof bits);
                values(d, j) = values(d, j - 1) + std::bit_cast<double>(to_little_endian(bits));
            }
        }
        e.paths_.push_back(std::move(values));
    }
    return e;
}

} // namespace loewner_ito
