#pragma once

#include <stdexcept>
#include <string>

namespace cohbound {

/// Invalid user-facing configuration (unknown state label, bad flag value, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine produced an internally inconsistent result.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cohbound
