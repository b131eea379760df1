#pragma once

#include <stdexcept>
#include <string>

namespace sewing {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Index outside the range where factorial ratios stay finite in double precision.
class RangeError : public Error {
public:
    using Error::Error;
};

class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& what, double achieved)
        : Error(what + " (achieved tail bound " + std::to_string(achieved) + ")"), achieved_bound(achieved) {}
    double achieved_bound;
};

class PoleError : public Error {
public:
    using Error::Error;
};

// Point rejected by a sewing-domain test.
class DomainError : public Error {
public:
    using Error::Error;
};

class NearDegenerateSewing : public Error {
public:
    NearDegenerateSewing(const std::string& what, double sigma_min)
        : Error(what + " (smallest singular value " + std::to_string(sigma_min) + ")"),
          smallest_singular_value(sigma_min) {}
    double smallest_singular_value;
};

class TruncationTooCoarse : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double residual)
        : Error(what + " (last residual " + std::to_string(residual) + ")"), last_residual(residual) {}
    double last_residual;
};

// Newton iterate left the sewing domain.
class DomainExit : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ActionSingular : public Error {
public:
    using Error::Error;
};

class UnassignedGenerator : public Error {
public:
    using Error::Error;
};

}  // namespace sewing
