#pragma once

#include <stdexcept>
#include <string>

namespace synthaudit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: bad flags, schema/CSV mismatch, out-of-range parameters.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Optimization produced a non-finite loss.
class TrainingDivergence : public Error {
public:
    using Error::Error;
};

/// A synthetic-data generator failed to produce a valid table.
class GeneratorError : public Error {
public:
    enum class Kind { spawn_failure, nonzero_exit, timeout, invalid_output, precondition };

    GeneratorError(Kind kind, const std::string& what, int exit_code = 0, std::string stderr_tail = {})
        : Error(what), kind_(kind), exit_code_(exit_code), stderr_tail_(std::move(stderr_tail)) {}

    Kind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return exit_code_; }
    const std::string& stderr_tail() const noexcept { return stderr_tail_; }

private:
    Kind kind_;
    int exit_code_;
    std::string stderr_tail_;
};

const char* to_string(GeneratorError::Kind kind) noexcept;

}  // namespace synthaudit
