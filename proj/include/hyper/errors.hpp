#pragma once

#include <stdexcept>
#include <string>

namespace hyper {

/// Operands live on different sections C^N (or carry different norm tags).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A deterministic search (region point, witness index) ran out of budget.
/// This says nothing about nonexistence.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested tolerance could not be certified within the iteration budget.
class ToleranceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an operator argument does not hold (e.g. an exponent
/// outside V when applying the right inverse).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hyper
