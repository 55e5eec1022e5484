#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ceeflow {

// Error taxonomy maps to CLI exit codes: validation -> 1, numerical -> 2, io -> 3.

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loader errors carry "file:line: message" so a bad row can be found by hand.
[[noreturn]] inline void fail_at(const std::string& file, std::size_t line, const std::string& msg) {
    throw ValidationError(file + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace ceeflow
