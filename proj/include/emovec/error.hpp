#pragma once

#include <stdexcept>
#include <string>

namespace emovec {

// Process exit codes used by the CLI. Library errors carry one of these
// so the binary can map any failure to the right code.
enum class ErrorKind {
    usage = 1,       // bad arguments / precondition violations
    data = 2,        // parse, I/O, or configuration problems
    numeric = 3,     // divergence or other numerical failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

// Caller passed something invalid (bad k, mismatched lengths, ...).
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& message)
        : Error(ErrorKind::usage, message) {}
};

// Malformed input data. `line` is 1-based when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : Error(ErrorKind::data,
                line ? message + " (line " + std::to_string(line) + ")" : message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Inconsistent configuration, e.g. an emotion anchor missing from the space.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message)
        : Error(ErrorKind::data, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message)
        : Error(ErrorKind::data, message) {}
};

// Similarity against a zero-norm vector is undefined.
class DegenerateVectorError : public Error {
public:
    explicit DegenerateVectorError(const std::string& message)
        : Error(ErrorKind::data, message) {}
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& message)
        : Error(ErrorKind::numeric, message) {}
};

}  // namespace emovec
