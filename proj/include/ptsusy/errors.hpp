#pragma once

#include <stdexcept>
#include <string>

namespace ptsusy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (x at an endpoint, bad c in 2F1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Gamma function argument landed on a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A series did not reach its tolerance within the configured term budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Bad input parameters for a transformation (constraint on lambda/nu, band mismatch, q sign).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what, std::string field = {})
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A transformation could not be built without introducing a singularity.
class ConstructionError : public Error {
public:
    ConstructionError(const std::string& what, double where)
        : Error(what + " (near x = " + std::to_string(where) + ")"), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

/// Evaluation hit a zero of u or w.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Transformed eigenfunction requested at a factorization energy.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Node counting could not decide (touching zero without sign change).
class InconclusiveError : public Error {
public:
    using Error::Error;
};

/// Integral diverges at an endpoint given the known power-law exponent.
class DivergenceError : public Error {
public:
    using Error::Error;
};

} // namespace ptsusy
