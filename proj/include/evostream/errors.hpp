#pragma once
#include <stdexcept>
#include <string>

namespace evostream {

// Error taxonomy mapped to process exit codes by the CLI:
// config_error -> 2, input_error -> 3, numerical_error -> 4.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bugs (broken invariants), not user mistakes.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace evostream
