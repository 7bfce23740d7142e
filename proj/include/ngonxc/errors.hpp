#pragma once

#include <stdexcept>
#include <string>

namespace ngonxc {

/// Argument outside the mathematical domain of an operation (e.g. n < 3).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operand shapes that cannot be combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke a documented precondition of an internal routine.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The recursive construction produced something that does not check out.
/// Carries the polygon size and the offending entry when one is known.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, int n, long row = -1, long col = -1,
                    double residual = 0.0)
      : std::runtime_error(what), n_(n), row_(row), col_(col), residual_(residual) {}

  int n() const noexcept { return n_; }
  long row() const noexcept { return row_; }
  long col() const noexcept { return col_; }
  double residual() const noexcept { return residual_; }

 private:
  int n_;
  long row_;
  long col_;
  double residual_;
};

/// A rank-one correction factor came out with an entry below the abort threshold.
class NonnegativityError : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

/// b - A x_j != U y_j for some polygon vertex.
class SlackIdentityError : public std::runtime_error {
 public:
  SlackIdentityError(const std::string& what, long vertex)
      : std::runtime_error(what), vertex_(vertex) {}
  long vertex() const noexcept { return vertex_; }

 private:
  long vertex_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ngonxc
