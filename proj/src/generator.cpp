#include "loewner_ito/generator.hpp"

#include <algorithm>
#include <cmath>

#include "loewner_ito/errors.hpp"
#include "loewner_ito/ito_transform.hpp"
#include "loewner_ito/stochastic_paths.hpp"

namespace loewner_ito {

PolynomialTestFunction::PolynomialTestFunction(std::vector<Complex> coefficients)
    : coefficients_(std::move(coefficients))
{
    if (coefficients_.empty())
        throw InvariantError("polynomial test function: at least one coefficient is required");
    for (const Complex& c : coefficients_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvariantError("polynomial test function: coefficients must be finite");
}

PolynomialTestFunction PolynomialTestFunction::monomial(std::size_t degree)
{
    std::vector<Complex> c(degree + 1, Complex{});
    c.back() = 1.0;
    return PolynomialTestFunction(std::move(c));
}

Complex PolynomialTestFunction::derivative(Complex z, std::size_t k) const
{
    Complex acc{};
    for (std::size_t j = coefficients_.size(); j-- > k;) {
        double falling = 1.0; // j (j-1) ... (j-k+1)
        for (std::size_t m = 0; m < k; ++m)
            falling *= static_cast<double>(j - m);
        acc = acc * z + falling * coefficients_[j];
    }
    return acc;
}

PolynomialTestFunction operator+(const PolynomialTestFunction& a, const PolynomialTestFunction& b)
{
    std::vector<Complex> c(std::max(a.coefficients().size(), b.coefficients().size()), Complex{});
    for (std::size_t j = 0; j < a.coefficients().size(); ++j)
        c[j] += a.coefficients()[j];
    for (std::size_t j = 0; j < b.coefficients().size(); ++j)
        c[j] += b.coefficients()[j];
    return PolynomialTestFunction(std::move(c));
}

PolynomialTestFunction operator*(Complex s, const PolynomialTestFunction& f)
{
    std::vector<Complex> c = f.coefficients();
    for (Complex& x : c)
        x *= s;
    return PolynomialTestFunction(std::move(c));
}

GeneratorReport estimate_generator_mc(const PolynomialTestFunction& f, Complex z,
                                      const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                      const GeneratorOptions& options)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("generator: z must satisfy |z| < 1");
    if (!(options.h > 0.0 && options.h <= 1e-2))
        throw InvariantError("generator: h must lie in (0, 1e-2]");
    if (options.n_samples < 1000)
        throw InvariantError("generator: n_samples must be >= 1000");
    if (options.substeps == 0)
        throw SizingError("generator: substeps must be positive");
    if (kappa.size() == 0)
        throw SizingError("generator: kappa must be nonempty");

    const TimeGrid grid(options.h, options.substeps);
    const BrownianEnsemble noise = generate_ensemble(static_cast<std::size_t>(kappa.size()), grid,
                                                     options.n_samples, options.seed,
                                                     options.threads);
    return estimate_generator_mc(f, z, kappa, p, noise);
}

GeneratorReport estimate_generator_mc(const PolynomialTestFunction& f, Complex z,
                                      const Eigen::VectorXd& kappa, const HerglotzSpec& p,
                                      const BrownianEnsemble& noise)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("generator: z must satisfy |z| < 1");
    const double h = noise.grid().t_end();
    if (!(h <= 1e-2))
        throw InvariantError("generator: h must lie in (0, 1e-2]");
    if (noise.n_paths() < 1000)
        throw InvariantError("generator: n_samples must be >= 1000");
    if (noise.n_dims() != static_cast<std::size_t>(kappa.size()))
        throw SizingError("generator: noise dimension does not match kappa");

    const Complex f0 = f(z);

    std::vector<Complex> samples;
    samples.reserve(noise.n_paths());
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < noise.n_paths(); ++i) {
        const std::optional<Complex> end = sde_endpoint(z, kappa, p, noise.path(i));
        if (!end) {
            ++excluded;
            continue;
        }
        samples.push_back((f(*end) - f0) / h);
    }

    GeneratorReport report{apply_generator(f, z, kappa, p),
                           Complex{std::nan(""), std::nan("")},
                           std::nan(""),
                           h,
                           samples.size(),
                           z,
                           excluded,
                           excluded * 100 > noise.n_paths()};
    if (samples.empty())
        return report;

    // Shifted two-pass moments: identical samples give exactly zero spread.
    const Complex shift = samples.front();
    Complex sum{};
    for (const Complex& s : samples)
        sum += s - shift;
    const double n = static_cast<double>(samples.size());
    const Complex mean_shifted = sum / n;
    double ss = 0.0;
    for (const Complex& s : samples)
        ss += std::norm((s - shift) - mean_shifted);
    report.mc_estimate = shift + mean_shifted;
    report.standard_error = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return report;
}

} // namespace loewner_ito
