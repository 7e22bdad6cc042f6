#pragma once

#include <stdexcept>
#include <string>

namespace locus {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Instance data violates a hard invariant (shape, sign, range, budget).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Inconsistent configuration, e.g. a squared penalty paired with AT_MOST.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A bound on z_i would be infinite (fewer than one station guaranteed open).
class UnboundedZ : public Error {
public:
  using Error::Error;
};

/// An exhaustive method was asked to visit more points than its cap allows.
class TooLarge : public Error {
public:
  using Error::Error;
};

class EnumerationTooLarge : public TooLarge {
public:
  using TooLarge::TooLarge;
};

/// The conditioned feasible set of a z-range query has no point with a
/// nonempty denominator.
class EmptyFeasibleSet : public Error {
public:
  using Error::Error;
};

class ExternalSolverFailure : public Error {
public:
  using Error::Error;
};

class IntegralityViolation : public Error {
public:
  using Error::Error;
};

/// Recomputed service level disagrees with the MILP objective.
class ObjectiveMismatch : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace locus
