#pragma once

#include <stdexcept>
#include <string>

namespace hsmult {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Input is well formed but violates an instance constraint (unknown variable, dim > n, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operands live in different ambient rings (variable counts differ).
class RingMismatch : public Error {
public:
    using Error::Error;
};

class ZeroElement : public Error {
public:
    using Error::Error;
};

class DenominatorVanishes : public Error {
public:
    using Error::Error;
};

/// Some variable has no pure-power bound among the support monomials.
class NotZeroDimensional : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class UnexpectedNullity : public Error {
public:
    explicit UnexpectedNullity(std::size_t nullity)
        : Error("kernel has dimension " + std::to_string(nullity) + " (expected at most 1)"),
          nullity_(nullity) {}
    std::size_t nullity() const { return nullity_; }

private:
    std::size_t nullity_;
};

class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class SearchExhausted : public Error {
public:
    explicit SearchExhausted(int bound)
        : Error("no certified reduction with entries of absolute value <= " + std::to_string(bound)),
          bound_(bound) {}
    int bound() const { return bound_; }

private:
    int bound_;
};

class NotStabilized : public Error {
public:
    using Error::Error;
};

} // namespace hsmult
