#pragma once

#include <stdexcept>
#include <string>

namespace qsteer {

/// Caller passed a value outside an operation's documented domain.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numeric quantity violated a tolerance that the algebra guarantees
/// (non-Hermitian input, negative spectrum beyond roundoff, ...).
struct NumericalIntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input is valid but the requested computation is out of scope for it.
struct UnsupportedInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An algebraic identity failed far beyond roundoff; signals a bug,
/// not physics.
struct IdentityViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qsteer
