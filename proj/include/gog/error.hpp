#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gog {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Letters from more than one vertex alphabet in a single word.
class AlphabetError : public Error {
public:
    using Error::Error;
};

/// Identity passed where a nontrivial element is required.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Malformed input text; carries a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structurally invalid graph of groups (identity inclusion, disconnected, ...).
class GraphError : public Error {
public:
    using Error::Error;
};

/// An operation was called without its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Elements built over different fundamental-group engines were mixed.
class TreeMismatchError : public Error {
public:
    using Error::Error;
};

/// A witness failed exact verification. Indicates a bug, never a verdict.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace gog
