#pragma once

#include <json.hpp>

#include "loewner_ito/admissibility.hpp"
#include "loewner_ito/generator.hpp"
#include "loewner_ito/herglotz.hpp"
#include "loewner_ito/ito_transform.hpp"
#include "loewner_ito/tau_driver.hpp"

namespace loewner_ito {

using Json = nlohmann::json;

// Complex numbers are [re, im] pairs.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json real_vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd real_vector_from_json(const Json& j);

/// {"variant": "atomic", "atoms": [{"theta", "weight"}...]} |
/// {"variant": "rational_cayley_plus", "a"} | {"variant": "constant"}
Json herglotz_to_json(const HerglotzSpec& p);
HerglotzSpec herglotz_from_json(const Json& j);

/// {"variant": "exponential", "kappa": [...]} | {"variant": "square_exponent", "n_dims"?} |
/// {"variant": "product_exponent", "n_dims"?}. Sampled drivers are not serializable.
Json tau_driver_to_json(const TauDriver& d);
TauDriver tau_driver_from_json(const Json& j);

Json to_json(const HerglotzValidation& v);
Json to_json(const ConvergenceReport& r);
Json to_json(const GeneratorReport& r);
Json to_json(const ClassifierReport& r);

} // namespace loewner_ito
