#pragma once

#include <stdexcept>
#include <string>

namespace asympt {

// Base class for everything this library throws on bad input or an
// unsatisfiable request. Computational code never throws raw std errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the documented domain (epsilon not in (0,1), a > b, ...).
struct DomainError : Error {
    using Error::Error;
};

// A piecewise function was asked for a classical derivative it does not have;
// the caller must route through the distribution calculus instead.
struct InsufficientSmoothness : Error {
    using Error::Error;
};

struct SingularSystem : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// Comparison requested between asymptotic numbers that are not both real.
struct NotOrdered : Error {
    using Error::Error;
};

struct UnsupportedDegree : Error {
    using Error::Error;
};

// Ladder/grid combination cannot represent the data exactly.
struct IllPosed : Error {
    using Error::Error;
};

struct NoValidExpansion : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

// An atom sits too close to the domain boundary for the finite-stage cutoff.
struct BoundaryFlag : Error {
    using Error::Error;
};

struct LadderMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

}  // namespace asympt
