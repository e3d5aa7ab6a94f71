#pragma once

#include <stdexcept>
#include <string>

namespace repgate {

/// Failure classes; the CLI maps them onto exit codes 1/2/3.
enum class ErrorKind { usage, data, backend };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class BackendError : public Error {
public:
    explicit BackendError(const std::string& what) : Error(ErrorKind::backend, what) {}
};

/// Source position of a lexing/parsing failure (1-based line and column).
struct SourcePosition {
    int line = 1;
    int column = 1;
    std::size_t offset = 0;
};

class SyntaxError : public DataError {
public:
    SyntaxError(SourcePosition pos, const std::string& message)
        : DataError(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
          position_(pos), message_(message) {}

    [[nodiscard]] const SourcePosition& position() const noexcept { return position_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    SourcePosition position_;
    std::string message_;
};

}  // namespace repgate
