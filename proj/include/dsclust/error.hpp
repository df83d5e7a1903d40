#pragma once

#include <stdexcept>
#include <string>

namespace dsclust {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input data (bad matrix, non-finite coordinate, ...).
struct InvalidInputError : Error {
    using Error::Error;
};

/// A parameter outside its documented range (sigma <= 0, n == 0, ...).
struct InvalidParameterError : Error {
    using Error::Error;
};

/// Not enough data to compute the requested quantity.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// A vector that cannot be normalized onto the simplex.
struct DegenerateStateError : Error {
    using Error::Error;
};

/// x^T A x == 0: the current support induces an empty subgraph.
struct ZeroPayoffError : Error {
    using Error::Error;
};

/// Non-finite intermediate despite overflow guards.
struct NumericOverflowError : Error {
    using Error::Error;
};

/// A violated internal invariant (bug, not user error).
struct InternalConsistencyError : Error {
    using Error::Error;
};

}  // namespace dsclust
