#pragma once

#include <stdexcept>
#include <string>

namespace loewner_ito {

// Violated invariant of a user-supplied specification (weights, sizes, etc).
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid sizing of a grid, ensemble, or vector argument.
class SizingError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

// Argument outside the domain of a function, e.g. |w| >= 1 for p~(w).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace loewner_ito
