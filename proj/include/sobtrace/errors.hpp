#pragma once

#include <stdexcept>
#include <string>

namespace sobtrace {

/// Argument outside the mathematical domain of an operation (Gamma poles,
/// inadmissible indices, exponents out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A field was handed to an operation expecting the other domain tag.
class TagError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Grid or dimension mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature missed its error target within the evaluation budget.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sobtrace
