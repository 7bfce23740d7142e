#pragma once

// Exact rectangle covering number (boolean rank) of small 0/1 patterns.
// Rows and columns are stored as 64-bit masks, so patterns are limited to
// 64 x 64, which is far beyond what the exact search can finish anyway.

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace ngonxc {

using Mask = std::uint64_t;

struct SupportPattern {
  int rows = 0;
  int cols = 0;
  std::vector<Mask> row_bits;  // bit j of row_bits[i] set iff entry (i, j) is positive

  bool at(int i, int j) const { return (row_bits[i] >> j) & 1U; }
  /// Rows whose entry in column j is positive.
  Mask column(int j) const;
  Mask all_rows() const;
  Mask all_cols() const;
  int count() const;
  bool empty() const { return count() == 0; }
};

/// Pattern of entries strictly greater than tol.
SupportPattern support_pattern(const Eigen::Ref<const Eigen::MatrixXd>& M, double tol);

/// Zero pattern of S_n: false exactly at i = j and i = (j + 1) mod n.
SupportPattern ngon_support(int n);

/// Combinatorial rectangle row_set x col_set of positive entries.
struct Rectangle {
  std::vector<int> row_set;  // sorted
  std::vector<int> col_set;  // sorted
  Mask row_mask = 0;
  Mask col_mask = 0;

  static Rectangle from_masks(Mask rows, Mask cols);
  bool contains(int i, int j) const { return ((row_mask >> i) & 1U) && ((col_mask >> j) & 1U); }
  int area() const { return static_cast<int>(row_set.size() * col_set.size()); }
  friend bool operator==(const Rectangle& a, const Rectangle& b) {
    return a.row_mask == b.row_mask && a.col_mask == b.col_mask;
  }
};

std::string to_string(const Rectangle& r);

/// Columns positive in every row of `rows`.
Mask common_cols(const SupportPattern& p, Mask rows);
/// Rows positive in every column of `cols`.
Mask common_rows(const SupportPattern& p, Mask cols);

/// All maximal all-positive rectangles, each exactly once, in the canonical
/// order of close-by-one enumeration over columns.
std::vector<Rectangle> maximal_rectangles(const SupportPattern& p);

struct RcResult {
  int value = 0;
  std::vector<Rectangle> cover;
  bool optimal = false;
  long long nodes_explored = 0;
  int lower_bound = 0;  // proven; equals value when optimal
};

/// True iff every rectangle is all-positive and together they hit every positive entry.
bool is_valid_cover(const SupportPattern& p, const std::vector<Rectangle>& cover);

/// Minimum cover by branch and bound over maximal rectangles. Stops after
/// node_budget search nodes and then reports the best cover found with
/// optimal = false.
RcResult rectangle_cover_number(const SupportPattern& p, long long node_budget = 100'000'000);

}  // namespace ngonxc
