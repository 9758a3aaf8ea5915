#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loewner_ito/errors.hpp"
#include "loewner_ito/tau_driver.hpp"

using namespace loewner_ito;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs)
        v(i++) = x;
    return v;
}

const Complex I{0.0, 1.0};

} // namespace

TEST(TauDriver, ExponentialAtZeroIsOne)
{
    EXPECT_EQ(evaluate_tau(TauDriver::exponential(vec({1.0})), vec({0.0})), Complex(1.0, 0.0));
}

TEST(TauDriver, ExponentialEulerIdentity)
{
    const Complex t = evaluate_tau(TauDriver::exponential(vec({std::numbers::pi})), vec({1.0}));
    EXPECT_NEAR(std::abs(t - Complex(-1.0, 0.0)), 0.0, 1e-15);
}

TEST(TauDriver, SquareExponentAtTwo)
{
    const Complex t = evaluate_tau(TauDriver::square_exponent(), vec({2.0}));
    EXPECT_NEAR(std::abs(t - Complex(std::cos(4.0), std::sin(4.0))), 0.0, 1e-15);
    EXPECT_NEAR(t.real(), -0.6536, 1e-4);
    EXPECT_NEAR(t.imag(), -0.7568, 1e-4);
}

TEST(TauDriver, DimensionMismatch)
{
    EXPECT_THROW(evaluate_tau(TauDriver::exponential(vec({1.0, 2.0})), vec({0.0})), SizingError);
    EXPECT_THROW(log_derivatives(TauDriver::product_exponent(), vec({0.0})), SizingError);
    EXPECT_THROW(TauDriver::product_exponent(1), SizingError);
}

TEST(TauDriver, UnitModulusEverywhereSampled)
{
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 3.0);
    const std::vector<TauDriver> drivers{TauDriver::exponential(vec({2.0, -1.0, 0.3})),
                                         TauDriver::square_exponent(3),
                                         TauDriver::product_exponent(3)};
    for (const auto& d : drivers) {
        for (int k = 0; k < 1000; ++k) {
            const Eigen::VectorXd y = vec({n(rng), n(rng), n(rng)});
            EXPECT_NEAR(std::abs(evaluate_tau(d, y)), 1.0, 1e-12);
        }
    }
}

TEST(TauDriver, SampledRejectsNonUnitValues)
{
    const auto d = TauDriver::sampled(1, 0.0, [](const Eigen::VectorXd&) { return Complex(2.0, 0.0); });
    EXPECT_THROW(evaluate_tau(d, vec({0.0})), InvariantError);
}

TEST(LogDerivatives, ExponentialIsLinearExponent)
{
    const auto d = TauDriver::exponential(vec({2.0, -1.0}));
    for (const auto& y : {vec({0.0, 0.0}), vec({1.3, -7.0})}) {
        const auto g = log_derivatives(d, y);
        EXPECT_EQ(g.gradient(0), 2.0 * I);
        EXPECT_EQ(g.gradient(1), -1.0 * I);
        EXPECT_TRUE(g.hessian.isZero(0.0));
    }
}

TEST(LogDerivatives, SquareExponent)
{
    const auto g = log_derivatives(TauDriver::square_exponent(), vec({1.0}));
    EXPECT_EQ(g.gradient(0), 2.0 * I);
    EXPECT_EQ(g.hessian(0, 0), 2.0 * I);
}

TEST(LogDerivatives, ProductExponent)
{
    const auto g = log_derivatives(TauDriver::product_exponent(), vec({1.0, 1.0}));
    EXPECT_EQ(g.hessian(0, 0), Complex{});
    EXPECT_EQ(g.hessian(1, 1), Complex{});
    EXPECT_EQ(g.hessian(0, 1), I);
    EXPECT_EQ(g.hessian(1, 0), I);
}

TEST(LogDerivatives, FiniteDifferencesMatchAnalytic)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const std::vector<TauDriver> drivers{TauDriver::exponential(vec({2.0, -1.0})),
                                         TauDriver::square_exponent(2),
                                         TauDriver::product_exponent(2)};
    for (const auto& d : drivers) {
        const auto fd = TauDriver::finite_difference_view(d);
        for (int k = 0; k < 50; ++k) {
            const Eigen::VectorXd y = vec({u(rng), u(rng)});
            const auto exact = log_derivatives(d, y);
            const auto approx = log_derivatives(fd, y, 1e-4);
            EXPECT_LE((exact.gradient - approx.gradient).cwiseAbs().maxCoeff(), 1e-6);
            EXPECT_LE((exact.hessian - approx.hessian).cwiseAbs().maxCoeff(), 1e-6);
        }
    }
}

TEST(LogDerivatives, CoarseSampledGridRejected)
{
    const auto d = TauDriver::finite_difference_view(TauDriver::square_exponent(), 1e-2);
    EXPECT_THROW(log_derivatives(d, vec({0.0}), 1e-4), SizingError);
    EXPECT_NO_THROW(log_derivatives(d, vec({0.0}), 1e-2));
}
