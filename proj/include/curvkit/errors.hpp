#pragma once

#include <stdexcept>
#include <string>

namespace curvkit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input (graph files, metric tables, CLI values).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Invalid argument value (negative time, s <= 0, unknown vertex, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The input graph lacks a structural property the operation needs
/// (connectedness, nonzero degree).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A curvature or metric hypothesis of a theorem check is violated.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace curvkit
