#pragma once

#include <stdexcept>
#include <string>

namespace aai {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures: instability, non-convergence, step-size problems.
// The CLI maps these to exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

// Physics-domain failures: the requested computation is outside the regime
// where the formulas are meaningful. CLI exit code 4.
struct PhysicsError : Error {
    using Error::Error;
};

struct PowerOverflow : Error {
    using Error::Error;
};

struct StepTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

struct QuadratureNotConverged : NumericalError {
    using NumericalError::NumericalError;
};

struct UnstableStep : NumericalError {
    using NumericalError::NumericalError;
};

struct DimensionTooSmall : Error {
    using Error::Error;
};

struct UnsupportedIndex : Error {
    using Error::Error;
};

struct UnsupportedLambda : Error {
    using Error::Error;
};

struct GridTooNarrow : PhysicsError {
    using PhysicsError::PhysicsError;
};

struct AliasRisk : PhysicsError {
    using PhysicsError::PhysicsError;
};

struct BoundaryLeak : PhysicsError {
    using PhysicsError::PhysicsError;
};

struct PhaseUndefined : PhysicsError {
    using PhysicsError::PhysicsError;
};

struct PacketGapTooLarge : PhysicsError {
    using PhysicsError::PhysicsError;
};

// Config-file problems. CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

struct UnknownKey : ConfigError {
    using ConfigError::ConfigError;
};

struct TypeMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct MissingRequired : ConfigError {
    using ConfigError::ConfigError;
};

} // namespace aai
