#pragma once

#include <stdexcept>
#include <string>

namespace imaginarity {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix fails the Hermiticity tolerance.
struct NotHermitianError : Error {
    using Error::Error;
};

// Trace differs from one beyond tolerance.
struct TraceNotOneError : Error {
    using Error::Error;
};

// An eigenvalue falls below the PSD tolerance.
struct NotPsdError : Error {
    using Error::Error;
};

// Eigenvalue more negative than the clamp window allows.
struct NegativeEigenvalueError : Error {
    using Error::Error;
};

// Iterative kernel exhausted its iteration budget.
struct NoConvergenceError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

// Dimension unsupported by the operation (for example, not a qubit).
struct DimensionError : Error {
    using Error::Error;
};

// Measure or operation name this build does not provide.
struct UnsupportedError : Error {
    using Error::Error;
};

// Dimension exceeds the envelope an optimizer is trusted on.
struct DimensionTooLargeError : Error {
    using Error::Error;
};

// Operand shapes are incompatible.
struct ShapeMismatchError : Error {
    using Error::Error;
};

// Second state's support does not contain the first's.
struct SupportMismatchError : Error {
    using Error::Error;
};

// Requested ensemble smaller than the rank it must dilate.
struct RankDeficientError : Error {
    using Error::Error;
};

// A map produced something that fails state validation.
struct OutputInvalidError : Error {
    using Error::Error;
};

// File missing, unreadable, or not the expected schema.
struct IoError : Error {
    using Error::Error;
};

} // namespace imaginarity
