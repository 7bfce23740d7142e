#pragma once

// Explicit nonnegative factorization of the regular n-gon slack matrix.
//
// The working object is the k x l upper-left block B of S_n with k = l or
// k = l + 1 (initially k = l = n). While l >= 5 two nonnegative rank-one
// matrices are removed from B: one from the p x p upper-right corner
// (p = ceil(l/2)) and one from the q x floor(l/2) lower-left corner
// (q = k - ceil(l/2)). What remains has zeros on the anti-diagonals
// i + j = l + 1 and i + j = l + 2 (1-based), and its rows and columns come in
// identical pairs, so it is a row/column replication of its own
// k' x ceil(l/2) upper-left block, which again is an upper-left block of S_n.
// Blocks with l <= 4 are factored as B * I.
//
// Every level adds two to the inner dimension, which gives
//   r = 2k - 1  if 2^(k-1) < n <= 2^(k-1) + 2^(k-2)
//   r = 2k      if 2^(k-1) + 2^(k-2) < n <= 2^k,   k = ceil(log2 n).

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ngonxc/errors.hpp"
#include "ngonxc/slack.hpp"

namespace ngonxc {

namespace tolerance {
/// Analytically-zero entries are snapped to 0 below this multiple of c(1).
inline constexpr double zero_snap = 1e-12;
/// Negative factor entries at or above -clamp_floor are rounding noise.
inline constexpr double clamp_floor = 1e-10;
/// Relative deviation from rank one tolerated in a correction matrix.
inline constexpr double rank_one = 1e-8;
/// Relative agreement required between structurally identical rows/columns.
inline constexpr double identity = 1e-10;
/// Relative residual accepted by the final self-check of the construction.
inline constexpr double construction = 1e-9;
}  // namespace tolerance

enum class CorrectionKind { lower_left, upper_right };

inline const char* to_string(CorrectionKind kind) {
  return kind == CorrectionKind::lower_left ? "lower_left" : "upper_right";
}

/// The k x l upper-left block of S_n handled at one recursion level.
struct BlockSpec {
  Index rows = 0;  // k
  Index cols = 0;  // l
  int depth = 0;
};

template <typename Scalar = double>
struct RankOneFactor {
  Vector<Scalar> u;     // length k, zero outside the corrected rows
  RowVector<Scalar> v;  // length l, zero outside the corrected columns
  CorrectionKind kind = CorrectionKind::lower_left;
  Index row_begin = 0, row_count = 0;
  Index col_begin = 0, col_count = 0;
  Scalar min_raw_entry = Scalar(0);  // before clamping
};

template <typename Scalar = double>
struct FactorPair {
  Matrix<Scalar> U;
  Matrix<Scalar> V;
};

template <typename Scalar = double>
struct Factorization {
  int n = 0;
  Matrix<Scalar> U;  // n x r
  Matrix<Scalar> V;  // r x n
  std::vector<BlockSpec> trace;         // blocks visited, outermost first
  Scalar min_raw_entry = Scalar(0);     // most negative correction entry before clamping

  Index r() const { return U.cols(); }
  Matrix<Scalar> product() const { return U * V; }
};

struct FactorizeOptions {
  bool check_identities = true;  // compare the paired rows/columns numerically
  bool verify = true;            // verify U V against S_n before returning
};

/// rows x cols matrix with 1-based entry (i, j) = c(alpha - i + j) - c(beta - i - j).
/// Rank one for every alpha, beta.
template <typename Scalar>
Matrix<Scalar> correction_matrix(const CoefficientFn<Scalar>& c, long long alpha, long long beta,
                                 Index rows, Index cols) {
  // entries depend on j - i and i + j only
  Vector<Scalar> diff(rows + cols - 1), sum(rows + cols - 1);
  for (Index t = 0; t < rows + cols - 1; ++t) {
    diff(t) = c(alpha + t - (rows - 1));  // j - i = t - (rows - 1)
    sum(t) = c(beta - (t + 2));           // i + j = t + 2
  }
  Matrix<Scalar> m(rows, cols);
  for (Index j = 0; j < cols; ++j) m.col(j) = diff.segment(j, rows).reverse() - sum.segment(j, rows);
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> correction_matrix(int n, long long alpha, long long beta, Index rows, Index cols) {
  return correction_matrix(CoefficientFn<Scalar>(n), alpha, beta, rows, cols);
}

namespace detail {

inline Index ceil_half(Index x) { return (x + 1) / 2; }

inline void require_block(const BlockSpec& b, int n) {
  if (b.cols < 1 || b.rows < b.cols || b.rows > b.cols + 1 || b.rows > n)
    throw ContractViolation("block must be k x l with l <= k <= l + 1 <= n + 1");
}

struct CorrectionGeometry {
  long long alpha, beta;
  Index row_begin, row_count, col_begin, col_count;
};

inline CorrectionGeometry correction_geometry(const BlockSpec& b, CorrectionKind kind) {
  const Index k = b.rows, l = b.cols;
  if (kind == CorrectionKind::upper_right) {
    const Index p = ceil_half(l);
    return {static_cast<long long>(l - p), static_cast<long long>(1 + p), 0, p, l - p, p};
  }
  const Index p = l / 2;
  const Index q = k - ceil_half(l);
  return {static_cast<long long>(q - k), static_cast<long long>(1 + p), k - q, q, 0, p};
}

}  // namespace detail

/// Nonnegative rank-one factor removed from one corner of a recursion block.
///
/// The correction is split as u = C(:, j*) and v = C(i*, :) / C(i*, j*) where
/// i* is the first row of largest max-norm and j* its first largest entry.
template <typename Scalar>
RankOneFactor<Scalar> rank_one_correction(const CoefficientFn<Scalar>& c, const BlockSpec& block,
                                          CorrectionKind kind) {
  using std::abs;
  detail::require_block(block, c.n());
  if (block.cols < 5) throw ContractViolation("rank-one corrections need a block with l >= 5");

  const auto g = detail::correction_geometry(block, kind);
  Matrix<Scalar> C = correction_matrix(c, g.alpha, g.beta, g.row_count, g.col_count);
  const Scalar snap = Scalar(tolerance::zero_snap) * c(1);

  C = (C.array().abs() < snap).select(Scalar(0), C);
  Vector<Scalar> row_max = Vector<Scalar>::Zero(C.rows());
  for (Index j = 0; j < C.cols(); ++j) row_max = row_max.cwiseMax(C.col(j).cwiseAbs());
  Index pivot_row = 0;
  const Scalar scale = row_max.maxCoeff(&pivot_row);
  Index pivot_col = 0;  // first column attaining the row maximum
  while (abs(C(pivot_row, pivot_col)) < scale) ++pivot_col;
  const Scalar pivot = C(pivot_row, pivot_col);
  if (pivot == Scalar(0))
    throw ConstructionError(std::string("vanishing ") + to_string(kind) + " correction", c.n());

  Vector<Scalar> u_local = C.col(pivot_col);
  RowVector<Scalar> v_local = C.row(pivot_row) / pivot;

  Scalar deviation = Scalar(0);
  Index bad_j = 0;
  for (Index j = 0; j < C.cols(); ++j) {
    const Scalar d = (C.col(j) - u_local * v_local(j)).cwiseAbs().maxCoeff();
    if (d > deviation) {
      deviation = d;
      bad_j = j;
    }
  }
  if (deviation > Scalar(tolerance::rank_one) * scale) {
    Index bad_i = 0;
    (C.col(bad_j) - u_local * v_local(bad_j)).cwiseAbs().maxCoeff(&bad_i);
    throw ConstructionError(std::string(to_string(kind)) + " correction is not rank one", c.n(),
                            static_cast<long>(g.row_begin + bad_i),
                            static_cast<long>(g.col_begin + bad_j),
                            static_cast<double>(deviation / scale));
  }

  RankOneFactor<Scalar> f;
  f.kind = kind;
  f.row_begin = g.row_begin;
  f.row_count = g.row_count;
  f.col_begin = g.col_begin;
  f.col_count = g.col_count;
  f.min_raw_entry = std::min(u_local.minCoeff(), v_local.minCoeff());
  if (f.min_raw_entry < -Scalar(tolerance::clamp_floor))
    throw NonnegativityError(std::string(to_string(kind)) + " correction factor has a negative entry",
                             c.n(), -1, -1, static_cast<double>(f.min_raw_entry));
  u_local = u_local.cwiseMax(Scalar(0));
  v_local = v_local.cwiseMax(Scalar(0));

  f.u = Vector<Scalar>::Zero(block.rows);
  f.v = RowVector<Scalar>::Zero(block.cols);
  f.u.segment(g.row_begin, g.row_count) = u_local;
  f.v.segment(g.col_begin, g.col_count) = v_local;
  return f;
}

template <typename Scalar = double>
RankOneFactor<Scalar> rank_one_correction(int n, const BlockSpec& block, CorrectionKind kind) {
  return rank_one_correction(CoefficientFn<Scalar>(n), block, kind);
}

/// B = B * I for blocks with at most four columns.
template <typename Derived>
FactorPair<typename Derived::Scalar> trivial_base_factorize(const Eigen::MatrixBase<Derived>& block,
                                                            Index k, Index l) {
  using Scalar = typename Derived::Scalar;
  if (l > 4) throw ContractViolation("trivial base case requires l <= 4");
  if (block.rows() != k || block.cols() != l)
    throw DimensionMismatch("base block shape does not match k x l");
  return {Matrix<Scalar>(block), Matrix<Scalar>::Identity(l, l)};
}

/// Block B minus both rank-one corrections (only defined for l >= 5).
template <typename Scalar>
Matrix<Scalar> corrected_block(const CoefficientFn<Scalar>& c, const BlockSpec& block) {
  const auto lower = rank_one_correction(c, block, CorrectionKind::lower_left);
  const auto upper = rank_one_correction(c, block, CorrectionKind::upper_right);
  Matrix<Scalar> residual = slack_block(c, block.rows, block.cols);
  residual.noalias() -= lower.u * lower.v;
  residual.noalias() -= upper.u * upper.v;
  return residual;
}

/// Shape of the block the recursion descends into.
inline BlockSpec inner_block(const BlockSpec& b) {
  const Index l = b.cols, k = b.rows;
  const Index inner_cols = detail::ceil_half(l);
  const Index inner_rows = (k == l && l % 2 == 0) ? l / 2 + 1 : detail::ceil_half(k);
  return {inner_rows, inner_cols, b.depth + 1};
}

/// Row of the inner block that row `m` (0-based) of the corrected block copies.
inline Index source_row(const BlockSpec& b, Index m) {
  const Index inner_rows = inner_block(b).rows;
  if (m < inner_rows) return m;
  // rows (i + s) and (k - i + 1) coincide, s = 1 when k = l and 0 when k = l + 1
  const Index s = b.rows == b.cols ? 1 : 0;
  const Index i = b.rows - m;  // 1-based partner index
  return i + s - 1;
}

/// Column of the inner block that column `j` (0-based) of the corrected block copies.
inline Index source_col(const BlockSpec& b, Index j) {
  const Index inner_cols = inner_block(b).cols;
  if (j < inner_cols) return j;
  return b.cols - j - 1;  // columns j and l - j + 1 coincide (1-based)
}

namespace detail {

// The corrected block R = B - u1 v1 - u2 v2 must satisfy R(:, j) = R(:, source_col(j))
// and R(m, :) = R(source_row(m), :). Checked entrywise without forming R.
template <typename Scalar>
void check_identities(const CoefficientFn<Scalar>& c, const BlockSpec& b,
                      const RankOneFactor<Scalar>& lower, const RankOneFactor<Scalar>& upper) {
  using std::abs;
  const Index k = b.rows, l = b.cols;
  const BlockSpec inner = inner_block(b);
  Vector<Scalar> diag(k + l - 1);  // B(i, j) = diag(j - i + k - 1)
  for (Index t = 0; t < k + l - 1; ++t) diag(t) = c(static_cast<long long>(t - (k - 1)));
  auto column = [&](Index j) -> Vector<Scalar> {
    return diag.segment(j, k).reverse() - lower.u * lower.v(j) - upper.u * upper.v(j);
  };
  auto row = [&](Index m) -> RowVector<Scalar> {
    return diag.segment(k - 1 - m, l).transpose() - lower.u(m) * lower.v - upper.u(m) * upper.v;
  };
  const Scalar tol = Scalar(tolerance::identity) * c.max();

  for (Index j = inner.cols; j < l; ++j) {
    const Vector<Scalar> diff = column(j) - column(source_col(b, j));
    const Scalar d = diff.cwiseAbs().maxCoeff();
    if (d > tol) {
      Index i = 0;
      diff.cwiseAbs().maxCoeff(&i);
      throw ConstructionError("paired columns differ after correction", c.n(), static_cast<long>(i),
                              static_cast<long>(j), static_cast<double>(d));
    }
  }
  for (Index m = inner.rows; m < k; ++m) {
    const RowVector<Scalar> diff = row(m) - row(source_row(b, m));
    const Scalar d = diff.cwiseAbs().maxCoeff();
    if (d > tol) {
      Index j = 0;
      diff.cwiseAbs().maxCoeff(&j);
      throw ConstructionError("paired rows differ after correction", c.n(), static_cast<long>(m),
                              static_cast<long>(j), static_cast<double>(d));
    }
  }
}

template <typename Scalar>
FactorPair<Scalar> factorize_block(const CoefficientFn<Scalar>& c, const BlockSpec& b,
                                   const FactorizeOptions& opts, std::vector<BlockSpec>& trace,
                                   Scalar& min_raw) {
  trace.push_back(b);
  if (b.cols <= 4) return trivial_base_factorize(slack_block(c, b.rows, b.cols), b.rows, b.cols);

  const auto lower = rank_one_correction(c, b, CorrectionKind::lower_left);
  const auto upper = rank_one_correction(c, b, CorrectionKind::upper_right);
  min_raw = std::min({min_raw, lower.min_raw_entry, upper.min_raw_entry});
  if (opts.check_identities) check_identities(c, b, lower, upper);

  const BlockSpec inner = inner_block(b);
  const FactorPair<Scalar> sub = factorize_block(c, inner, opts, trace, min_raw);

  const Index r = 2 + sub.U.cols();
  FactorPair<Scalar> out{Matrix<Scalar>(b.rows, r), Matrix<Scalar>(r, b.cols)};
  out.U.col(0) = lower.u;
  out.U.col(1) = upper.u;
  out.V.row(0) = lower.v;
  out.V.row(1) = upper.v;
  for (Index m = 0; m < b.rows; ++m) out.U.row(m).tail(r - 2) = sub.U.row(source_row(b, m));
  for (Index j = 0; j < b.cols; ++j) out.V.col(j).tail(r - 2) = sub.V.col(source_col(b, j));
  return out;
}

}  // namespace detail

/// Outcome of checking U V against a target matrix.
struct VerificationReport {
  double max_abs_residual = 0;
  double max_rel_residual = 0;
  Index residual_row = -1, residual_col = -1;
  double min_entry = 0;
  bool min_entry_in_U = true;
  Index min_entry_row = -1, min_entry_col = -1;
  double tolerance = 0;
  bool passed = false;

  std::string summary() const {
    std::ostringstream os;
    os.precision(6);
    os << (passed ? "pass" : "fail") << ": max_abs_residual=" << max_abs_residual
       << " max_rel_residual=" << max_rel_residual << " at (" << residual_row << ","
       << residual_col << ") min_entry=" << min_entry << " in " << (min_entry_in_U ? "U" : "V")
       << "(" << min_entry_row << "," << min_entry_col << ") tol=" << tolerance;
    return os.str();
  }
};

namespace detail {

// fill(i0, h, panel) writes rows [i0, i0 + h) of the target into panel.
template <typename Scalar, typename DerivedU, typename DerivedV, typename Fill>
VerificationReport verify_panels(Index rows, Index cols, double target_max,
                                 const Eigen::MatrixBase<DerivedU>& U,
                                 const Eigen::MatrixBase<DerivedV>& V, double tol, Fill&& fill) {
  if (U.rows() != rows || V.cols() != cols || U.cols() != V.rows()) {
    std::ostringstream os;
    os << "cannot compare " << rows << "x" << cols << " with (" << U.rows() << "x" << U.cols()
       << ")(" << V.rows() << "x" << V.cols() << ")";
    throw DimensionMismatch(os.str());
  }
  VerificationReport rep;
  rep.tolerance = tol;

  // Row panels keep the product cache-resident for large n.
  constexpr Index panel = 128;
  Matrix<Scalar> target;
  for (Index i0 = 0; i0 < rows; i0 += panel) {
    const Index h = std::min(panel, rows - i0);
    target.resize(h, cols);
    fill(i0, h, target);
    target.noalias() -= U.middleRows(i0, h) * V;
    const double d = static_cast<double>(target.cwiseAbs().maxCoeff());
    if (d > rep.max_abs_residual || rep.residual_row < 0) {
      Index bi = 0, bj = 0;
      target.cwiseAbs().maxCoeff(&bi, &bj);
      rep.max_abs_residual = d;
      rep.residual_row = i0 + bi;
      rep.residual_col = bj;
    }
  }
  rep.max_rel_residual = target_max > 0 ? rep.max_abs_residual / target_max : rep.max_abs_residual;

  Index ui = 0, uj = 0, vi = 0, vj = 0;
  const double umin = U.size() ? static_cast<double>(U.minCoeff(&ui, &uj)) : 0.0;
  const double vmin = V.size() ? static_cast<double>(V.minCoeff(&vi, &vj)) : 0.0;
  rep.min_entry_in_U = umin <= vmin;
  rep.min_entry = std::min(umin, vmin);
  rep.min_entry_row = rep.min_entry_in_U ? ui : vi;
  rep.min_entry_col = rep.min_entry_in_U ? uj : vj;
  rep.passed = rep.max_rel_residual <= tol && rep.min_entry >= -tol;
  return rep;
}

}  // namespace detail

/// Residual and sign check of U V against S. Passes iff the relative residual
/// and the negated smallest entry of U, V are both within tol.
template <typename DerivedS, typename DerivedU, typename DerivedV>
VerificationReport verify_factorization(const Eigen::MatrixBase<DerivedS>& S,
                                        const Eigen::MatrixBase<DerivedU>& U,
                                        const Eigen::MatrixBase<DerivedV>& V, double tol) {
  using Scalar = typename DerivedS::Scalar;
  const double smax = S.size() ? static_cast<double>(S.cwiseAbs().maxCoeff()) : 0.0;
  return detail::verify_panels<Scalar>(S.rows(), S.cols(), smax, U, V, tol,
                                       [&S](Index i0, Index h, Matrix<Scalar>& out) {
                                         out = S.middleRows(i0, h);
                                       });
}

/// Verification against the raw slack matrix without materializing it.
template <typename Scalar, typename DerivedU, typename DerivedV>
VerificationReport verify_factorization(const CoefficientFn<Scalar>& c,
                                        const Eigen::MatrixBase<DerivedU>& U,
                                        const Eigen::MatrixBase<DerivedV>& V, double tol) {
  const Index n = c.n();
  Vector<Scalar> diag(2 * n - 1);  // S(i, j) = diag(j - i + n - 1)
  for (Index t = 0; t < 2 * n - 1; ++t) diag(t) = c(static_cast<long long>(t - (n - 1)));
  return detail::verify_panels<Scalar>(
      n, n, static_cast<double>(c.max()), U, V, tol,
      [&diag, n](Index i0, Index h, Matrix<Scalar>& out) {
        for (Index j = 0; j < n; ++j) out.col(j) = diag.segment(j + n - i0 - h, h).reverse();
      });
}

template <typename Scalar>
VerificationReport verify_factorization(const SlackMatrix<Scalar>& S, const Factorization<Scalar>& F,
                                        double tol) {
  return verify_factorization(S.entries, F.U, F.V, tol);
}

/// Nonnegative factorization of the raw slack matrix of the regular n-gon.
template <typename Scalar = double>
Factorization<Scalar> recursive_factorize(int n, const FactorizeOptions& opts = {}) {
  const CoefficientFn<Scalar> c(n);
  Factorization<Scalar> f;
  f.n = n;
  auto pair = detail::factorize_block(c, BlockSpec{n, n, 0}, opts, f.trace, f.min_raw_entry);
  f.U = std::move(pair.U);
  f.V = std::move(pair.V);
  if (opts.verify) {
    const auto rep = verify_factorization(c, f.U, f.V, tolerance::construction);
    if (!rep.passed)
      throw ConstructionError("factorization of S_" + std::to_string(n) + " failed verification: " +
                                  rep.summary(),
                              n, static_cast<long>(rep.residual_row),
                              static_cast<long>(rep.residual_col), rep.max_rel_residual);
  }
  return f;
}

/// Same factorization rescaled to the normalized slack matrix (U multiplied by 1/c(1)).
template <typename Scalar = double>
Factorization<Scalar> recursive_factorize_normalized(int n, const FactorizeOptions& opts = {}) {
  auto f = recursive_factorize<Scalar>(n, opts);
  f.U /= slack_coefficient<Scalar>(n, 1);
  return f;
}

/// Inner dimension of the recursive construction for S_n, n >= 2.
inline int upper_bound_size(long long n) {
  if (n < 2) throw DomainError("upper_bound_size needs n >= 2");
  int k = 0;
  while ((1LL << k) < n) ++k;  // k = ceil(log2 n)
  // 2^(k-1) + 2^(k-2) = 3 * 2^k / 4
  return 4 * n <= 3 * (1LL << k) ? 2 * k - 1 : 2 * k;
}

/// Lifted description {x : A x + U y = b, y >= 0} of the regular n-gon.
template <typename Scalar = double>
struct ExtendedFormulation {
  int n = 0;
  Matrix<Scalar> A;  // n x 2 facet normals
  Vector<Scalar> b;  // n offsets
  Matrix<Scalar> U;  // n x r, nonnegative
  Matrix<Scalar> vertices;  // 2 x n, x_j on the unit circle

  Index num_lifted_variables() const { return U.cols(); }
  /// The only inequalities of the lifted system are y >= 0.
  Index num_inequalities() const { return U.cols(); }

  template <typename DX, typename DY>
  bool is_feasible(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y, double tol) const {
    if (y.size() != U.cols() || x.size() != 2) throw DimensionMismatch("point has wrong dimension");
    if (y.minCoeff() < -tol) return false;
    return ((A * x + U * y - b).cwiseAbs().maxCoeff()) <= tol;
  }
};

/// Facet data of the polygon scaled by `scale`, so that b - A x_j reproduces
/// scale * c(j - i); pass 1/c(1) for factorizations of the normalized matrix.
template <typename Scalar = double>
ExtendedFormulation<Scalar> extension_from_factorization(int n, const Factorization<Scalar>& F,
                                                         Scalar scale = Scalar(1)) {
  using std::cos;
  using std::sin;
  detail::require_polygon(n);
  if (F.U.rows() != n || F.V.cols() != n || F.U.cols() != F.V.rows())
    throw DimensionMismatch("factorization does not match the " + std::to_string(n) + "-gon");

  const Scalar pi = std::numbers::pi_v<Scalar>;
  ExtendedFormulation<Scalar> ext;
  ext.n = n;
  ext.A.resize(n, 2);
  ext.b.resize(n);
  ext.vertices.resize(2, n);
  for (int j = 0; j < n; ++j) {
    const Scalar theta = Scalar(2) * pi * Scalar(j) / Scalar(n);
    ext.vertices(0, j) = cos(theta);
    ext.vertices(1, j) = sin(theta);
  }
  for (int i = 0; i < n; ++i) {
    // facet i spans vertices i-1 and i; outward normal at their angular midpoint
    const Scalar psi = pi * Scalar(2 * i - 1) / Scalar(n);
    ext.A(i, 0) = scale * cos(psi);
    ext.A(i, 1) = scale * sin(psi);
    ext.b(i) = scale * cos(pi / Scalar(n));
  }
  ext.U = F.U;

  const Matrix<Scalar> slacks = ext.b.replicate(1, n) - ext.A * ext.vertices;
  const double tol = 1e-8 * std::max(1.0, static_cast<double>(slacks.cwiseAbs().maxCoeff()));
  if (F.U.minCoeff() < -1e-8 || F.V.minCoeff() < -1e-8)
    throw DomainError("extension needs a nonnegative factorization");
  for (int j = 0; j < n; ++j) {
    const double d = static_cast<double>((slacks.col(j) - F.U * F.V.col(j)).cwiseAbs().maxCoeff());
    if (d > tol)
      throw SlackIdentityError("slack identity violated at vertex " + std::to_string(j), j);
  }
  return ext;
}

}  // namespace ngonxc
