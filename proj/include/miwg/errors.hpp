#pragma once

#include <stdexcept>
#include <string>

namespace miwg {

// A numerical procedure failed to meet its accuracy contract
// (singular system, vanishing denominator, quadrature budget).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Semi-infinite quadrature did not converge within the segment budget.
// Carries where integration stopped and the size of the last contribution.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double truncation_point, double last_segment_estimate)
        : NumericalError(what),
          truncation_point(truncation_point),
          last_segment_estimate(last_segment_estimate) {}

    double truncation_point;
    double last_segment_estimate;
};

// Input document or option set violates the documented schema.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// The chain-decay ansatz does not apply: both quadratic roots exceed unit
// magnitude, so no passive constant-rate solution exists.
class ModelViolationError : public std::runtime_error {
public:
    explicit ModelViolationError(const std::string& what) : std::runtime_error(what) {}
};

// Operation requested outside the approximate model's domain
// (non-uniform arrays belong to the exact solver).
class UnsupportedConfigurationError : public std::invalid_argument {
public:
    explicit UnsupportedConfigurationError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace miwg
