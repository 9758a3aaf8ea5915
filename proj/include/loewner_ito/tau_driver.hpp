#pragma once

#include <complex>
#include <functional>
#include <variant>

#include <Eigen/Dense>

namespace loewner_ito {

using Complex = std::complex<double>;

/// tau(y) = exp(i kappa . y)
struct ExponentialDriver {
    Eigen::VectorXd kappa;
};

/// tau(y) = exp(i y_1^2); remaining coordinates are ignored.
struct SquareExponentDriver {
    Eigen::Index n_dims = 1;
};

/// tau(y) = exp(i y_1 y_2); requires n_dims >= 2.
struct ProductExponentDriver {
    Eigen::Index n_dims = 2;
};

/// Unit-modulus values supplied by a callback, resolved no finer than
/// `spacing`. Derivatives come from central differences only.
struct SampledDriver {
    Eigen::Index n_dims;
    double spacing;
    std::function<Complex(const Eigen::VectorXd&)> sample;
};

/// Driver tau: R^n -> unit circle, entering the randomized chain through tau(B_t).
class TauDriver {
public:
    using Variant =
        std::variant<ExponentialDriver, SquareExponentDriver, ProductExponentDriver, SampledDriver>;

    static TauDriver exponential(Eigen::VectorXd kappa);
    static TauDriver square_exponent(Eigen::Index n_dims = 1);
    static TauDriver product_exponent(Eigen::Index n_dims = 2);
    static TauDriver sampled(Eigen::Index n_dims, double spacing,
                             std::function<Complex(const Eigen::VectorXd&)> sample);
    /// Same values as `driver`, but derivatives are taken by finite differences.
    static TauDriver finite_difference_view(const TauDriver& driver, double spacing = 0.0);

    Eigen::Index n_dims() const;
    bool is_sampled() const { return std::holds_alternative<SampledDriver>(variant_); }
    const Variant& variant() const { return variant_; }

private:
    explicit TauDriver(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

inline constexpr double default_fd_step = 1e-4;

/// Gradient and Hessian of log tau. For unit-modulus tau both are purely
/// imaginary up to rounding.
struct LogDerivatives {
    Eigen::VectorXcd gradient;
    Eigen::MatrixXcd hessian;
};

/// tau(y); |result| = 1 within 1e-12. Throws SizingError on dimension mismatch.
Complex evaluate_tau(const TauDriver& d, const Eigen::VectorXd& y);

/// Analytic for built-in variants; central differences with step fd_step for
/// Sampled (SizingError if the driver's spacing exceeds fd_step).
LogDerivatives log_derivatives(const TauDriver& d, const Eigen::VectorXd& y,
                               double fd_step = default_fd_step);

} // namespace loewner_ito
