#pragma once

#include <stdexcept>
#include <string>

namespace dspaces {

// Parameters outside the range where a norm or check is defined.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input files or literals.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dspaces
