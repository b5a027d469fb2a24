#pragma once

#include <stdexcept>
#include <string>

namespace simsect {

/// Precondition violations and malformed arguments (maps to CLI exit code 2).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Algorithmic failures: tolerance not met, pole hit, ill-conditioning
/// (maps to CLI exit code 3).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace simsect
