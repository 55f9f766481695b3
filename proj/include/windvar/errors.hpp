#pragma once

#include <stdexcept>
#include <string>

namespace windvar {

// Error taxonomy shared by every module. All of these derive from
// std::runtime_error so callers can catch the base when they do not care
// which invariant failed.

/// Malformed input file (bad header, bad timestamp, non-monotone rows, ...).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input parses but violates a domain invariant (negative wind speed, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two series cannot be brought onto a common time window.
struct AlignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A (horizon, mode) partition retained no usable design rows.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A lookup key (e.g. a reference model family) is absent from a table.
struct KeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad run configuration (missing path, unordered split dates, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace windvar
