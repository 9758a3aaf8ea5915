#pragma once

#include <loewner_ito/stochastic_paths.hpp>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "loewner_ito/herglotz.hpp"

namespace loewner_ito {

/// f(z) = sum_j c_j z^j.
class PolynomialTestFunction {
public:
    explicit PolynomialTestFunction(std::vector<Complex> coefficients);

    static PolynomialTestFunction monomial(std::size_t degree);

    const std::vector<Complex>& coefficients() const { return coefficients_; }
    std::size_t degree() const { return coefficients_.size() - 1; }

    /// k-th complex derivative at z (Horner on the differentiated coefficients).
    Complex derivative(Complex z, std::size_t k) const;
    Complex operator()(Complex z) const { return derivative(z, 0); }

private:
    std::vector<Complex> coefficients_;
};

PolynomialTestFunction operator+(const PolynomialTestFunction& a, const PolynomialTestFunction& b);
PolynomialTestFunction operator*(Complex s, const PolynomialTestFunction& f);

/// (A f)(z) = a(z) f'(z) - |kappa|^2 / 2 z^2 f''(z),
/// a(z) = -|kappa|^2 z / 2 + (1 - z)^2 p~(z).
template <typename DerivedK>
Complex apply_generator(const PolynomialTestFunction& f, Complex z,
                        const Eigen::MatrixBase<DerivedK>& kappa, const HerglotzSpec& p)
{
    const double k2 = kappa.squaredNorm();
    const Complex u = 1.0 - z;
    const Complex a = -0.5 * k2 * z + u * u * evaluate(p, z);
    return a * f.derivative(z, 1) - 0.5 * k2 * z * z * f.derivative(z, 2);
}

struct GeneratorOptions {
    double h = 1e-3;
    std::size_t substeps = 8;
    std::size_t n_samples = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct GeneratorReport {
    Complex closed_form;
    Complex mc_estimate;
    double standard_error; // standard error of the complex sample mean
    double h;
    std::size_t n_samples; // samples used (excluded ones removed)
    Complex z;
    std::size_t excluded;
    bool flagged; // more than 1% of samples excluded
};

/// Monte Carlo estimate of (E f(psi_h) - f(z)) / h with psi_h from `substeps`
/// Euler-Maruyama steps of the exponential-driver diffusion started at z.
GeneratorReport estimate_generator_mc(const PolynomialTestFunction& f, Complex z,
                                      const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                      const GeneratorOptions& options = {});

/// Same estimate on pre-drawn noise: h is the ensemble horizon and each path
/// supplies one sample. Lets several estimates share one ensemble.
GeneratorReport estimate_generator_mc(const PolynomialTestFunction& f, Complex z,
                                      const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                      const BrownianEnsemble& noise);

} // namespace loewner_ito
