#pragma once

#include <stdexcept>
#include <string>

namespace emptysimplex {

/// Operands of different ambient dimension were combined.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A simplex whose normalized volume is within the degeneracy tolerance.
class DegenerateSimplexError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact degree computation was requested for a point set above the cap.
class ExactCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejection sampling could not make progress (body too thin inside its box).
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration or input file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace emptysimplex
