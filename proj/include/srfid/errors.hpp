#pragma once

#include <stdexcept>
#include <string>

namespace srfid {

// Base class for all library failures so callers can catch srfid::Error
// wholesale or pick off the specific condition they can recover from.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition violation: argument outside the mathematical domain of the
// operation (negative separation, |x| > 1 for Legendre, m > l, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Result or intermediate exceeds the supported numeric envelope.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Evaluation at or within guard distance of a pole (surface mode eps = -1,
// multipole resonance l*eps + l + 1 = 0).
class PoleError : public Error {
public:
    using Error::Error;
};

// Malformed input data; line is 1-based within the offending stream.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    long line;
};

// Requested point lies outside tabulated or integrable coverage.
class RangeError : public Error {
public:
    using Error::Error;
};

// Input file missing or unreadable.
class FileError : public Error {
public:
    using Error::Error;
};

// Series or quadrature failed to reach the requested tolerance within its
// budget; carries the best error estimate available at abort time.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double estimate)
        : Error(msg), error_estimate(estimate) {}
    double error_estimate;
};

// Inputs that are individually valid but jointly unphysical, e.g. a mode
// density tensor whose contraction yields a negative total rate.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

// Fidelity denominator (summed local mode densities) vanished.
class DegenerateModeDensityError : public Error {
public:
    using Error::Error;
};

} // namespace srfid
