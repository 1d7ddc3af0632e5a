#pragma once

#include <stdexcept>
#include <string>

namespace cwlab {

/// Bad user input: parameters, grid sizes, config files, CLI values.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime integration failure: lost positivity, Newton stall,
/// boundary contamination, non-finite fields.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cwlab
