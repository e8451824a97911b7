// errors.hpp — exception types with CLI exit-code mappings.

#pragma once

#include <stdexcept>
#include <string>

namespace tcg {

// Model description or configuration is malformed. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The commutator [K, X] is not proportional to X (or the fitted rate is not
// real): the coarse-graining assumptions fail for this model. CLI exit code 3.
struct ProportionalityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A propagation step produced NaN/Inf entries. CLI exit code 4.
struct IntegrationBlowup : std::runtime_error {
    IntegrationBlowup(const std::string& what, long step)
        : std::runtime_error(what), step_index(step) {}
    long step_index;
};

} // namespace tcg
