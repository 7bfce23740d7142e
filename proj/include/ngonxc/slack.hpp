#pragma once

// Slack coefficients and slack matrices of regular n-gons inscribed in the
// unit circle. Facet i passes through vertices i-1 and i, so the slack of
// vertex j against facet i only depends on j - i and the matrix is circulant.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ngonxc/errors.hpp"

namespace ngonxc {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Index = Eigen::Index;

namespace detail {

inline void require_polygon(int n) {
  if (n < 3) throw DomainError("regular polygon needs n >= 3, got " + std::to_string(n));
}

// Canonical representative of k under c(k) = c(k + n) = c(n - 1 - k).
// The result lies in [0, floor((n - 1) / 2)] and is 0 exactly on the
// two zero classes, which makes the analytic zeros exact in floating point.
inline long long canonical_index(int n, long long k) {
  long long m = k % n;
  if (m < 0) m += n;
  const long long mirror = n - 1 - m;
  return m < mirror ? m : mirror;
}

template <typename Scalar>
Scalar coefficient_from_canonical(int n, long long m) {
  using std::sin;
  if (m == 0) return Scalar(0);
  const Scalar step = std::numbers::pi_v<Scalar> / Scalar(n);
  // cos(a) - cos(b) = 2 sin((b+a)/2) sin((b-a)/2) with a = pi/n, b = (2m+1)pi/n
  return Scalar(2) * sin(Scalar(m) * step) * sin(Scalar(m + 1) * step);
}

}  // namespace detail

/// c(k) = cos(pi/n) - cos((2k+1) pi/n) for any integer k.
///
/// Evaluated through the product form 2 sin(k pi/n) sin((k+1) pi/n) after
/// reducing k to its canonical class, so periodicity and reflection hold
/// bit-for-bit and c vanishes exactly where it should.
template <typename Scalar = double>
Scalar slack_coefficient(int n, long long k) {
  detail::require_polygon(n);
  return detail::coefficient_from_canonical<Scalar>(n, detail::canonical_index(n, k));
}

/// Tabulated coefficient function of one polygon; callable on any integer.
template <typename Scalar = double>
class CoefficientFn {
 public:
  explicit CoefficientFn(int n) : n_(n) {
    detail::require_polygon(n);
    const int half = (n - 1) / 2;
    table_.resize(static_cast<std::size_t>(half) + 1);
    for (int m = 0; m <= half; ++m) table_[m] = detail::coefficient_from_canonical<Scalar>(n, m);
  }

  int n() const noexcept { return n_; }

  Scalar operator()(long long k) const {
    return table_[static_cast<std::size_t>(detail::canonical_index(n_, k))];
  }

  /// Largest coefficient, attained at k = floor((n-1)/2).
  Scalar max() const { return table_.back(); }

 private:
  int n_;
  std::vector<Scalar> table_;
};

/// Dense circulant slack matrix S[i][j] = scale * c(j - i).
template <typename Scalar = double>
struct SlackMatrix {
  int n = 0;
  Scalar scale = Scalar(1);
  Matrix<Scalar> entries;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
  Scalar operator()(Index i, Index j) const { return entries(i, j); }
};

/// Upper-left rows x cols block of the raw slack matrix.
template <typename Scalar>
Matrix<Scalar> slack_block(const CoefficientFn<Scalar>& c, Index rows, Index cols) {
  // diagonal t = j - i + rows - 1 holds c(j - i)
  std::vector<Scalar> diag(static_cast<std::size_t>(rows + cols - 1));
  for (Index t = 0; t < rows + cols - 1; ++t) diag[t] = c(static_cast<long long>(t - (rows - 1)));
  Matrix<Scalar> block(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    const Scalar* d = diag.data() + j + rows - 1;
    for (Index i = 0; i < rows; ++i) block(i, j) = *(d - i);
  }
  return block;
}

/// Slack matrix of the regular n-gon. With `normalized` the entries are
/// divided by c(1), which turns the hexagon into the small-integer matrix.
template <typename Scalar = double>
SlackMatrix<Scalar> slack_matrix(int n, bool normalized = false) {
  const CoefficientFn<Scalar> c(n);
  SlackMatrix<Scalar> s;
  s.n = n;
  s.scale = normalized ? Scalar(1) / c(1) : Scalar(1);
  s.entries = slack_block(c, n, n);
  if (normalized) s.entries *= s.scale;
  const Scalar snap = Scalar(1e-12) * c(1) * s.scale;
  s.entries = s.entries.unaryExpr([snap](Scalar x) { return std::abs(x) < snap ? Scalar(0) : x; });
  return s;
}

}  // namespace ngonxc
