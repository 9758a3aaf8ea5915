#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "loewner_ito/errors.hpp"

namespace loewner_ito::cli {

/// Malformed or invalid experiment configuration; the message is anchored to
/// the config file line (or the --set override) it came from.
class ConfigError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_runtime = 2;

/// loewner-ito <simulate|sde|verify-transform|generator|classify|validate-herglotz>
///     --config <path> [--set key=value ...] --out <dir> [--threads N]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Configuration every subcommand starts from before the file and overrides apply.
const std::string& default_config_text();

} // namespace loewner_ito::cli
