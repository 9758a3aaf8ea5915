#include "loewner_ito/json_io.hpp"

#include <string>

#include "loewner_ito/errors.hpp"

namespace loewner_ito {

namespace {

const Json& require(const Json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw InvariantError(std::string(what) + ": missing key \"" + key + "\"");
    return j.at(key);
}

double as_number(const Json& j, const std::string& what)
{
    if (!j.is_number())
        throw InvariantError(what + ": expected a number");
    return j.get<double>();
}

} // namespace

Json complex_to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw InvariantError("complex value: expected [re, im]");
    return {as_number(j[0], "complex value"), as_number(j[1], "complex value")};
}

Json real_vector_to_json(const Eigen::VectorXd& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

Eigen::VectorXd real_vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw InvariantError("real vector: expected an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = as_number(j[i], "real vector");
    return v;
}

Json herglotz_to_json(const HerglotzSpec& p)
{
    if (const auto* m = std::get_if<AtomicMeasure>(&p.variant())) {
        Json atoms = Json::array();
        for (const Atom& a : m->atoms)
            atoms.push_back({{"theta", a.theta}, {"weight", a.weight}});
        return {{"variant", "atomic"}, {"atoms", atoms}};
    }
    if (const auto* c = std::get_if<RationalCayleyPlus>(&p.variant()))
        return {{"variant", "rational_cayley_plus"}, {"a", c->a}};
    return {{"variant", "constant"}};
}

HerglotzSpec herglotz_from_json(const Json& j)
{
    const Json& variant = require(j, "variant", "herglotz");
    if (!variant.is_string())
        throw InvariantError("herglotz: \"variant\" must be a string");
    const auto name = variant.get<std::string>();
    if (name == "constant")
        return HerglotzSpec::constant();
    if (name == "rational_cayley_plus")
        return HerglotzSpec::rational_cayley_plus(as_number(require(j, "a", "herglotz"), "herglotz.a"));
    if (name == "atomic") {
        const Json& atoms = require(j, "atoms", "herglotz");
        if (!atoms.is_array())
            throw InvariantError("herglotz.atoms: expected an array");
        std::vector<Atom> parsed;
        for (const Json& a : atoms)
            parsed.push_back({as_number(require(a, "theta", "herglotz atom"), "herglotz atom theta"),
                              as_number(require(a, "weight", "herglotz atom"), "herglotz atom weight")});
        return HerglotzSpec::atomic(std::move(parsed));
    }
    throw InvariantError("herglotz: unknown variant \"" + name + "\"");
}

Json tau_driver_to_json(const TauDriver& d)
{
    if (const auto* e = std::get_if<ExponentialDriver>(&d.variant()))
        return {{"variant", "exponential"}, {"kappa", real_vector_to_json(e->kappa)}};
    if (std::holds_alternative<SquareExponentDriver>(d.variant()))
        return {{"variant", "square_exponent"}, {"n_dims", d.n_dims()}};
    if (std::holds_alternative<ProductExponentDriver>(d.variant()))
        return {{"variant", "product_exponent"}, {"n_dims", d.n_dims()}};
    throw InvariantError("tau driver: sampled drivers cannot be serialized");
}

TauDriver tau_driver_from_json(const Json& j)
{
    const Json& variant = require(j, "variant", "driver");
    if (!variant.is_string())
        throw InvariantError("driver: \"variant\" must be a string");
    const auto name = variant.get<std::string>();
    auto dims = [&](Eigen::Index fallback) {
        return j.contains("n_dims") ? static_cast<Eigen::Index>(as_number(j["n_dims"], "driver.n_dims"))
                                    : fallback;
    };
    if (name == "exponential")
        return TauDriver::exponential(real_vector_from_json(require(j, "kappa", "driver")));
    if (name == "square_exponent")
        return TauDriver::square_exponent(dims(1));
    if (name == "product_exponent")
        return TauDriver::product_exponent(dims(2));
    throw InvariantError("driver: unknown variant \"" + name + "\"");
}

Json to_json(const HerglotzValidation& v)
{
    return {{"min_real_part", v.min_real_part},
            {"value_at_0", complex_to_json(v.value_at_origin)},
            {"passed", v.passed}};
}

Json to_json(const ConvergenceReport& r)
{
    Json levels = Json::array();
    for (const ConvergenceLevel& l : r.levels)
        levels.push_back({{"h", l.h},
                          {"rms_discrepancy", l.rms_discrepancy},
                          {"excluded", l.excluded},
                          {"path_count", l.path_count}});
    Json out = {{"levels", levels}};
    out["estimated_order"] = r.estimated_order ? Json(*r.estimated_order) : Json(nullptr);
    out["path_count"] = r.levels.empty() ? 0 : r.levels.back().path_count;
    return out;
}

Json to_json(const GeneratorReport& r)
{
    return {{"closed_form", complex_to_json(r.closed_form)},
            {"mc_estimate", complex_to_json(r.mc_estimate)},
            {"stderr", r.standard_error},
            {"h", r.h},
            {"n_samples", r.n_samples},
            {"z", complex_to_json(r.z)},
            {"excluded", r.excluded},
            {"flagged", r.flagged}};
}

Json to_json(const ClassifierReport& r)
{
    Json grid = Json::array();
    for (const Eigen::VectorXd& y : r.grid)
        grid.push_back(real_vector_to_json(y));
    Json out = {{"admissible", r.admissible},
                {"max_diagonal_residual", r.max_diagonal_residual},
                {"max_mixed_residual", r.max_mixed_residual},
                {"kappa_variation", r.kappa_variation},
                {"tolerance", r.tolerance},
                {"finite_difference", r.finite_difference},
                {"grid", grid}};
    out["kappa"] = r.kappa ? real_vector_to_json(*r.kappa) : Json(nullptr);
    return out;
}

} // namespace loewner_ito
