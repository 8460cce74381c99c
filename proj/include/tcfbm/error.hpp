#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tcfbm {

// Root of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter is outside its admissible range (Hurst, stable index, (a,b) = (0,0), ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Argument lies outside the domain where a closed form is defined (t <= s, zero variance, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An input violates an operation's precondition (e.g. subordinator path too short to invert).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A configured resource cap was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Too few usable points for a power-law fit.
class FitError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Covariance factorization failed even after diagonal jitter; carries the grid that caused it.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, std::vector<double> grid);

    const std::vector<double>& grid() const noexcept { return grid_; }

private:
    std::vector<double> grid_;
};

}  // namespace tcfbm
