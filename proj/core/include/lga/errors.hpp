#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lga {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that is well-formed but violates an operation's precondition
/// (cyclic grammar, nondeterministic automaton passed to `minimize`, ...).
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// A structural invariant does not hold. Raised by validating constructors.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace lga
