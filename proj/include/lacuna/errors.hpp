#pragma once

#include <stdexcept>
#include <string>

namespace lacuna {

// Invalid user input: malformed config, unknown keys, out-of-domain arguments.
// The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation could not meet its certificate: requested tolerance below the
// rounding floor, truncation cap exceeded, value outside double range.
// The CLI maps this to exit code 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lacuna
