#pragma once

// Closed-form lower bounds on the nonnegative rank of S_n, all evaluated in
// exact integer arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace ngonxc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(a, b), zero when b < 0, b > a or a < 0.
BigInt binomial(long long a, long long b);

BigInt factorial(int m);

/// Smallest r >= 1 with C(r, floor(r/2)) >= p: an antichain of p sets needs a
/// ground set of at least r elements.
int sperner_bound(long long p);

/// Smallest r >= 2 with n (r - 1) <= (r - floor(r/2)) C(r, floor(r/2)).
/// Lower bound on the rectangle covering number of the n-gon zero pattern.
int improved_boolean_bound(long long n);

/// Maximal number of k-faces of a d-polytope with v vertices (cyclic polytope).
/// Requires d >= 1, v >= d + 1 and 0 <= k <= d - 1.
BigInt faces(int v, int d, int k);

/// Smallest r with n <= max_{3<=d<=r-1} min(faces(r, d-1, d-3), faces(r, d-1, d-2)).
/// The triangle (n = 3) has nonnegative rank 3 and is returned as such.
int geometric_lower_bound(long long n);

/// ceil(log2(2n + 2)).
int trivial_log_bound(long long n);

/// k! (r-k)! + (k+z)! (r-k-z)! - 2 k! z! (r-k-z)!
BigInt fkz(int r, int k, int z);

struct MinFkzResult {
  int r = 0;
  int k_star = 0;  // lexicographically last minimizer
  int z_star = 0;
  BigInt min_f;          // min f(k, z)
  Rational min_value;    // min f(k, z) / r!
  std::vector<std::pair<int, int>> all_minimizers;  // (k, z), lexicographic
};

/// Exhaustive minimization of f(k, z) over k >= 1, z >= 1, k + z <= r.
MinFkzResult minimize_fkz(int r);

struct RcbEntry {
  int value = 0;        // best cover found
  int lower_bound = 0;  // proven lower bound (== value when optimal)
  bool optimal = false;
  long long nodes = 0;
};

/// Every bound for one polygon size. lb_best takes the rectangle covering
/// family as bounds on rank_+ too, since boolean rank <= nonnegative rank.
struct BoundsRow {
  int n = 0;
  int lb_log = 0;
  int lb_sperner = 0;
  int lb_improved = 0;
  int lb_geometric = 0;
  std::optional<RcbEntry> rcb;
  int lb_best = 0;
  int ub = 0;
  int gap = 0;
};

inline constexpr long long default_rcb_budget = 100'000'000;

BoundsRow bounds_row(int n, bool include_rcb, long long rcb_budget = default_rcb_budget);

}  // namespace ngonxc
