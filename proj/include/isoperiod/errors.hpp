#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isoperiod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// Rational function evaluated where its denominator is zero.
struct DenominatorVanishes : Error {
    std::vector<double> point;
    DenominatorVanishes(std::string msg, std::vector<double> p)
        : Error(std::move(msg)), point(std::move(p)) {}
};

struct NotAnInvolution : Error {
    using Error::Error;
};

struct ZeroAlpha : Error {
    using Error::Error;
};

struct NotSigmaOdd : Error {
    using Error::Error;
};

/// Field evaluated at a point flagged invalid by its domain guard.
struct GuardViolation : Error {
    std::vector<double> point;
    GuardViolation(std::string msg, std::vector<double> p)
        : Error(std::move(msg)), point(std::move(p)) {}
};

struct StepSizeUnderflow : Error {
    using Error::Error;
};

struct NonFiniteState : Error {
    using Error::Error;
};

struct NoCrossing : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct NoReturn : Error {
    using Error::Error;
};

struct CriticalPoint : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotFound : Error {
    using Error::Error;
};

/// Config/file parsing failure; message carries source and field context.
struct ParseError : Error {
    using Error::Error;
};

} // namespace isoperiod
