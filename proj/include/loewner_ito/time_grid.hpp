#pragma once

#include <cstddef>

#include "loewner_ito/errors.hpp"

namespace loewner_ito {

/// Uniform grid t_j = j * h on [0, t_end], j = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps)
    {
        if (n_steps == 0)
            throw SizingError("time grid: n_steps must be positive");
        if (!(t_end > 0.0))
            throw SizingError("time grid: t_end must be positive");
    }

    double t_end() const { return t_end_; }
    std::size_t n_steps() const { return n_steps_; }
    std::size_t n_points() const { return n_steps_ + 1; }
    double step() const { return t_end_ / static_cast<double>(n_steps_); }
    double time(std::size_t j) const { return static_cast<double>(j) * step(); }

    TimeGrid refined() const { return TimeGrid(t_end_, 2 * n_steps_); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double t_end_;
    std::size_t n_steps_;
};

} // namespace loewner_ito
