#pragma once

#include <stdexcept>
#include <string>

namespace stopmove {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file or stream could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file (CSV, catalog JSON). Carries the 1-based line
/// number when one is known, 0 otherwise.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a model invariant (overlapping PoIs,
/// duplicate timestamps, inconsistent rollups, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A lookup or operation outside the domain of a finite mapping.
class DomainError : public Error {
public:
    using Error::Error;
};

/// RESM syntax or binding error; position is a 0-based byte offset into
/// the query text.
class QueryError : public Error {
public:
    QueryError(const std::string& what, std::size_t position)
        : Error("at position " + std::to_string(position) + ": " + what),
          detail_(what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }
    /// The message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    std::size_t position_;
};

}  // namespace stopmove
