#include "loewner_ito/tau_driver.hpp"

#include <cmath>
#include <string>

#include "loewner_ito/errors.hpp"

namespace loewner_ito {

namespace {

constexpr double unit_modulus_tolerance = 1e-12;
constexpr Complex I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_dims(const TauDriver& d, const Eigen::VectorXd& y)
{
    if (y.size() != d.n_dims())
        throw SizingError("tau driver: expected a point of dimension " +
                          std::to_string(d.n_dims()) + ", got " + std::to_string(y.size()));
}

LogDerivatives central_differences(const SampledDriver& s, const Eigen::VectorXd& y, double step)
{
    const Eigen::Index n = s.n_dims;
    auto tau = [&](const Eigen::VectorXd& x) { return s.sample(x); };
    const Complex t0 = tau(y);
    Eigen::VectorXcd d1(n);
    Eigen::MatrixXcd d2(n, n);

    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd yp = y, ym = y;
        yp(i) += step;
        ym(i) -= step;
        const Complex tp = tau(yp);
        const Complex tm = tau(ym);
        d1(i) = (tp - tm) / (2.0 * step);
        d2(i, i) = (tp - 2.0 * t0 + tm) / (step * step);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Eigen::VectorXd pp = y, pm = y, mp = y, mm = y;
            pp(i) += step; pp(j) += step;
            pm(i) += step; pm(j) -= step;
            mp(i) -= step; mp(j) += step;
            mm(i) -= step; mm(j) -= step;
            d2(i, j) = (tau(pp) - tau(pm) - tau(mp) + tau(mm)) / (4.0 * step * step);
            d2(j, i) = d2(i, j);
        }
    }

    // (log tau)' = tau'/tau, (log tau)'' = tau''/tau - (tau'/tau)(tau'/tau)^T
    LogDerivatives out;
    out.gradient = d1 / t0;
    out.hessian = d2 / t0 - out.gradient * out.gradient.transpose();
    return out;
}

} // namespace

TauDriver TauDriver::exponential(Eigen::VectorXd kappa)
{
    if (kappa.size() == 0)
        throw SizingError("exponential driver: kappa must be nonempty");
    if (!kappa.allFinite())
        throw InvariantError("exponential driver: kappa must be finite");
    return TauDriver(ExponentialDriver{std::move(kappa)});
}

TauDriver TauDriver::square_exponent(Eigen::Index n_dims)
{
    if (n_dims < 1)
        throw SizingError("square_exponent driver: n_dims must be >= 1");
    return TauDriver(SquareExponentDriver{n_dims});
}

TauDriver TauDriver::product_exponent(Eigen::Index n_dims)
{
    if (n_dims < 2)
        throw SizingError("product_exponent driver: n_dims must be >= 2");
    return TauDriver(ProductExponentDriver{n_dims});
}

TauDriver TauDriver::sampled(Eigen::Index n_dims, double spacing,
                             std::function<Complex(const Eigen::VectorXd&)> sample)
{
    if (n_dims < 1)
        throw SizingError("sampled driver: n_dims must be >= 1");
    if (!(spacing >= 0.0))
        throw InvariantError("sampled driver: spacing must be nonnegative");
    if (!sample)
        throw InvariantError("sampled driver: callback is empty");
    return TauDriver(SampledDriver{n_dims, spacing, std::move(sample)});
}

TauDriver TauDriver::finite_difference_view(const TauDriver& driver, double spacing)
{
    return sampled(driver.n_dims(), spacing,
                   [driver](const Eigen::VectorXd& y) { return evaluate_tau(driver, y); });
}

Eigen::Index TauDriver::n_dims() const
{
    return std::visit(overloaded{
                          [](const ExponentialDriver& e) { return e.kappa.size(); },
                          [](const SquareExponentDriver& s) { return s.n_dims; },
                          [](const ProductExponentDriver& p) { return p.n_dims; },
                          [](const SampledDriver& s) { return s.n_dims; },
                      },
                      variant_);
}

Complex evaluate_tau(const TauDriver& d, const Eigen::VectorXd& y)
{
    check_dims(d, y);
    return std::visit(
        overloaded{
            [&](const ExponentialDriver& e) { return std::polar(1.0, e.kappa.dot(y)); },
            [&](const SquareExponentDriver&) { return std::polar(1.0, y(0) * y(0)); },
            [&](const ProductExponentDriver&) { return std::polar(1.0, y(0) * y(1)); },
            [&](const SampledDriver& s) {
                const Complex v = s.sample(y);
                if (!(std::abs(std::abs(v) - 1.0) <= unit_modulus_tolerance))
                    throw InvariantError("sampled driver: value is not of unit modulus");
                return v;
            },
        },
        d.variant());
}

LogDerivatives log_derivatives(const TauDriver& d, const Eigen::VectorXd& y, double fd_step)
{
    check_dims(d, y);
    const Eigen::Index n = d.n_dims();
    LogDerivatives out{Eigen::VectorXcd::Zero(n), Eigen::MatrixXcd::Zero(n, n)};

    std::visit(overloaded{
                   [&](const ExponentialDriver& e) { out.gradient = I * e.kappa.cast<Complex>(); },
                   [&](const SquareExponentDriver&) {
                       out.gradient(0) = 2.0 * I * y(0);
                       out.hessian(0, 0) = 2.0 * I;
                   },
                   [&](const ProductExponentDriver&) {
                       out.gradient(0) = I * y(1);
                       out.gradient(1) = I * y(0);
                       out.hessian(0, 1) = I;
                       out.hessian(1, 0) = I;
                   },
                   [&](const SampledDriver& s) {
                       if (!(fd_step > 0.0))
                           throw InvariantError("finite differences: fd_step must be positive");
                       if (s.spacing > fd_step)
                           throw SizingError("sampled driver: grid spacing " +
                                             std::to_string(s.spacing) +
                                             " is too coarse for fd_step " +
                                             std::to_string(fd_step));
                       out = central_differences(s, y, fd_step);
                   },
               },
               d.variant());
    return out;
}

} // namespace loewner_ito
