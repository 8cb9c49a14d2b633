#pragma once

#include <stdexcept>
#include <string>

namespace ipt {

// Error taxonomy. The CLI maps these onto exit codes:
//   argument/parse/resource -> 2 (bad input), numerical/invariant -> 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller passed something outside the documented domain.
struct ArgumentError : Error {
    using Error::Error;
};

// A stated precondition or data-structure invariant failed at runtime.
struct InvariantError : Error {
    using Error::Error;
};

// Iteration did not converge, a checked residual was out of tolerance,
// or a result that must be an integer refused to snap to one.
struct NumericalError : Error {
    using Error::Error;
};

// Value does not fit the destination floating-point format.
struct RangeError : NumericalError {
    using NumericalError::NumericalError;
};

// Request exceeds a documented size cap.
struct ResourceError : Error {
    using Error::Error;
};

// Requested invariant subspace is empty (triangle or parity failure).
struct EmptySubspaceError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// The request is recognized but not implemented without extra user input
// (e.g. an extension field with no built-in modulus).
struct UnsupportedError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// Two Latin squares that were required to be mutually orthogonal are not.
struct OrthogonalityError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// State-file decoding failures, kept distinct so callers can tell them apart.
struct ParseError : ArgumentError {
    using ArgumentError::ArgumentError;
};
struct SchemaError : ArgumentError {
    using ArgumentError::ArgumentError;
};
struct IndexRangeError : ArgumentError {
    using ArgumentError::ArgumentError;
};
struct NormMismatchError : ArgumentError {
    using ArgumentError::ArgumentError;
};

}  // namespace ipt
