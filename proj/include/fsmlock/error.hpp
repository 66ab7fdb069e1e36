#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsmlock {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t line, std::size_t column = 0);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Bit widths of two operands (or of an operand and a machine port) disagree.
class WidthError : public Error {
public:
    using Error::Error;
};

/// No lock parameters exist for the requested license length or layer shape.
class InfeasibleParams : public Error {
public:
    using Error::Error;
};

/// An exhaustive sweep would exceed the configured bit-width guard.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace fsmlock
