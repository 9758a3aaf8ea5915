#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace loewner_ito {

using Complex = std::complex<double>;

/// Point mass of the boundary measure at angle theta (radians).
struct Atom {
    double theta;
    double weight;
};

/// p~(w) = sum_j weight_j (e^{i theta_j} + w) / (e^{i theta_j} - w); weights sum to 1.
struct AtomicMeasure {
    std::vector<Atom> atoms;
};

/// p~(w) = 1 / (1 - w) + a, a > 0.
struct RationalCayleyPlus {
    double a;
};

/// p~(w) = 1.
struct ConstantHerglotz {};

/// Holomorphic function on the unit disk with nonnegative real part.
/// Construct through the factories, which enforce the variant invariants.
class HerglotzSpec {
public:
    using Variant = std::variant<AtomicMeasure, RationalCayleyPlus, ConstantHerglotz>;

    static HerglotzSpec atomic(std::vector<Atom> atoms);
    static HerglotzSpec single_atom(double theta) { return atomic({{theta, 1.0}}); }
    static HerglotzSpec rational_cayley_plus(double a);
    static HerglotzSpec constant() { return HerglotzSpec(ConstantHerglotz{}); }

    const Variant& variant() const { return variant_; }

private:
    explicit HerglotzSpec(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

/// p~(w), p~'(w), or p~''(w) for order 0, 1, 2. Throws DomainError if |w| >= 1.
Complex evaluate(const HerglotzSpec& p, Complex w, int order = 0);

struct HerglotzValidation {
    double min_real_part;
    Complex value_at_origin;
    bool passed; // min_real_part >= -1e-9
};

inline const std::vector<double>& default_validation_radii()
{
    static const std::vector<double> radii{0.1, 0.3, 0.5, 0.7, 0.9, 0.95};
    return radii;
}
inline constexpr int default_validation_angles = 64;

/// Scans Re p~ over the polar grid radii x n_angles equispaced angles.
HerglotzValidation validate(const HerglotzSpec& p,
                            const std::vector<double>& radii = default_validation_radii(),
                            int n_angles = default_validation_angles);

} // namespace loewner_ito
