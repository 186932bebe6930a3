#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cherry {

// Base for every error the library reports on purpose.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Malformed graph: cycle, several sources, bad degrees, unlabeled sink.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error("validation", msg) {}
};

// Caller broke an operation's precondition (wrong network class, missing leaf...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error("precondition", msg) {}
};

// Argument outside an operation's domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error("domain", msg) {}
};

// Brute-force search refused because the instance is too large.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& msg) : Error("cap", msg) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : Error("parse", std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace cherry
