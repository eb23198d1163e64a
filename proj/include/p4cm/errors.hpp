#pragma once

#include <stdexcept>
#include <string>

namespace p4cm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the representable range of a special function.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole (of Gamma, of an ODE right-hand side, of a closed form).
class PoleError : public Error {
public:
    using Error::Error;
};

/// Input outside the mathematical domain of an operation (wrong regime, |rho| on the wrong side of 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to converge or produced an inconsistent result.
class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what, double where = 0.0)
        : Error(what), where_(where) {}

    /// Abscissa of the last good state, when meaningful.
    double where() const noexcept { return where_; }

private:
    double where_;
};

}  // namespace p4cm
