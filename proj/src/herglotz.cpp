#include "loewner_ito/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "loewner_ito/errors.hpp"

namespace loewner_ito {

namespace {

constexpr double weight_sum_tolerance = 1e-12;
constexpr double validation_threshold = -1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

HerglotzSpec HerglotzSpec::atomic(std::vector<Atom> atoms)
{
    if (atoms.empty())
        throw InvariantError("herglotz atomic measure: at least one atom is required");
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.theta) || !std::isfinite(a.weight))
            throw InvariantError("herglotz atomic measure: atoms must be finite");
        if (a.weight < 0.0)
            throw InvariantError("herglotz atomic measure: weights must be nonnegative");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > weight_sum_tolerance)
        throw InvariantError("herglotz atomic measure: weights must sum to 1 (got " +
                             std::to_string(total) + ")");
    return HerglotzSpec(AtomicMeasure{std::move(atoms)});
}

HerglotzSpec HerglotzSpec::rational_cayley_plus(double a)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw InvariantError("herglotz rational_cayley_plus: a must be positive");
    return HerglotzSpec(RationalCayleyPlus{a});
}

Complex evaluate(const HerglotzSpec& p, Complex w, int order)
{
    if (!(std::abs(w) < 1.0))
        throw DomainError("herglotz evaluate: |w| must be < 1");
    if (order < 0 || order > 2)
        throw InvariantError("herglotz evaluate: order must be 0, 1 or 2");

    return std::visit(
        overloaded{
            [&](const AtomicMeasure& m) {
                // d^k/dw^k (e + w)/(e - w) = 2 k! e / (e - w)^{k+1} for k >= 1
                Complex sum{0.0, 0.0};
                for (const Atom& a : m.atoms) {
                    const Complex e = std::polar(1.0, a.theta);
                    const Complex r = 1.0 / (e - w);
                    Complex term;
                    switch (order) {
                    case 0: term = (e + w) * r; break;
                    case 1: term = 2.0 * e * r * r; break;
                    default: term = 4.0 * e * r * r * r; break;
                    }
                    sum += a.weight * term;
                }
                return sum;
            },
            [&](const RationalCayleyPlus& c) {
                const Complex r = 1.0 / (1.0 - w);
                switch (order) {
                case 0: return r + c.a;
                case 1: return r * r;
                default: return 2.0 * r * r * r;
                }
            },
            [&](const ConstantHerglotz&) { return order == 0 ? Complex{1.0, 0.0} : Complex{}; },
        },
        p.variant());
}

HerglotzValidation validate(const HerglotzSpec& p, const std::vector<double>& radii, int n_angles)
{
    if (radii.empty() || n_angles <= 0)
        throw SizingError("herglotz validate: empty validation grid");
    for (double r : radii)
        if (!(r > 0.0 && r < 1.0))
            throw DomainError("herglotz validate: radii must lie in (0, 1)");

    double min_re = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        for (int k = 0; k < n_angles; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / n_angles;
            min_re = std::min(min_re, evaluate(p, std::polar(r, angle)).real());
        }
    }
    return {min_re, evaluate(p, Complex{}), min_re >= validation_threshold};
}

} // namespace loewner_ito
