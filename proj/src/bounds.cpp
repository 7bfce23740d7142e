#include "ngonxc/bounds.hpp"

#include <algorithm>
#include <string>

#include "ngonxc/errors.hpp"
#include "ngonxc/factorize.hpp"
#include "ngonxc/rectcover.hpp"

namespace ngonxc {

BigInt binomial(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt result = 1;
  for (long long i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;  // exact: result is C(a - b + i, i)
  }
  return result;
}

BigInt factorial(int m) {
  if (m < 0) throw DomainError("factorial of a negative number");
  BigInt f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

namespace {

// Walks r = 1, 2, ... keeping C(r, floor(r/2)) up to date.
class CentralBinomial {
 public:
  int r() const { return r_; }
  const BigInt& value() const { return value_; }
  void advance() {
    if (r_ % 2 == 0) {
      const int m = r_ / 2;  // C(2m+1, m) = C(2m, m) (2m+1) / (m+1)
      value_ *= 2 * m + 1;
      value_ /= m + 1;
    } else {
      value_ *= 2;  // C(2m+2, m+1) = 2 C(2m+1, m)
    }
    ++r_;
  }

 private:
  int r_ = 1;
  BigInt value_ = 1;  // C(1, 0)
};

}  // namespace

int sperner_bound(long long p) {
  if (p < 1) throw DomainError("sperner_bound needs p >= 1");
  CentralBinomial cb;
  while (cb.value() < p) cb.advance();
  return cb.r();
}

int improved_boolean_bound(long long n) {
  if (n < 2) throw DomainError("improved_boolean_bound needs n >= 2");
  CentralBinomial cb;
  cb.advance();  // r = 2
  for (;;) {
    const int r = cb.r();
    if (BigInt(n) * (r - 1) <= BigInt(r - r / 2) * cb.value()) return r;
    cb.advance();
  }
}

BigInt faces(int v, int d, int k) {
  if (d < 1 || v < d + 1 || k < 0 || k > d - 1)
    throw DomainError("faces(v, d, k) needs d >= 1, v >= d + 1, 0 <= k <= d - 1");
  // the classical formula counts (kf - 1)-faces
  const long long kf = k + 1;
  Rational total = 0;
  for (int i = 0; i <= d / 2; ++i) {
    const BigInt term = (binomial(d - i, kf - i) + binomial(i, kf - d + i)) * binomial(v - d - 1 + i, i);
    if (d % 2 == 0 && 2 * i == d)
      total += Rational(term, 2);
    else
      total += Rational(term);
  }
  if (denominator(total) != 1)
    throw std::logic_error("faces(" + std::to_string(v) + "," + std::to_string(d) + "," +
                           std::to_string(k) + ") is not an integer");
  return numerator(total);
}

int geometric_lower_bound(long long n) {
  if (n < 3) throw DomainError("geometric_lower_bound needs n >= 3");
  if (n == 3) return 3;
  int log2n = 0;
  while ((1LL << log2n) < n) ++log2n;
  const int cap = 2 * log2n + 4;
  for (int r = 4; r <= cap; ++r) {
    BigInt best = 0;
    for (int d = 3; d <= r - 1; ++d) best = std::max(best, std::min(faces(r, d - 1, d - 3), faces(r, d - 1, d - 2)));
    if (BigInt(n) <= best) return r;
  }
  throw std::logic_error("geometric bound search exceeded its cap for n = " + std::to_string(n));
}

int trivial_log_bound(long long n) {
  if (n < 1) throw DomainError("trivial_log_bound needs n >= 1");
  int t = 0;
  while ((1LL << t) < 2 * n + 2) ++t;
  return t;
}

BigInt fkz(int r, int k, int z) {
  return factorial(k) * factorial(r - k) + factorial(k + z) * factorial(r - k - z) -
         2 * factorial(k) * factorial(z) * factorial(r - k - z);
}

MinFkzResult minimize_fkz(int r) {
  if (r < 2) throw DomainError("minimize_fkz needs r >= 2");
  std::vector<BigInt> fact(static_cast<std::size_t>(r) + 1);
  fact[0] = 1;
  for (int i = 1; i <= r; ++i) fact[i] = fact[i - 1] * i;

  MinFkzResult res;
  res.r = r;
  bool first = true;
  for (int k = 1; k < r; ++k) {
    for (int z = 1; k + z <= r; ++z) {
      const BigInt f = fact[k] * fact[r - k] + fact[k + z] * fact[r - k - z] -
                       2 * fact[k] * fact[z] * fact[r - k - z];
      if (first || f < res.min_f) {
        res.min_f = f;
        res.all_minimizers.clear();
        first = false;
      }
      if (f == res.min_f) res.all_minimizers.emplace_back(k, z);
    }
  }
  res.k_star = res.all_minimizers.back().first;
  res.z_star = res.all_minimizers.back().second;
  res.min_value = Rational(res.min_f, fact[r]);
  return res;
}

BoundsRow bounds_row(int n, bool include_rcb, long long rcb_budget) {
  if (n < 3) throw DomainError("bounds_row needs n >= 3");
  BoundsRow row;
  row.n = n;
  row.lb_log = trivial_log_bound(n);
  row.lb_sperner = sperner_bound(n);
  row.lb_improved = improved_boolean_bound(n);
  row.lb_geometric = geometric_lower_bound(n);
  row.ub = upper_bound_size(n);
  row.lb_best = std::max({row.lb_log, row.lb_sperner, row.lb_improved, row.lb_geometric});
  if (include_rcb) {
    const RcResult rc = rectangle_cover_number(ngon_support(n), rcb_budget);
    row.rcb = RcbEntry{rc.value, rc.lower_bound, rc.optimal, rc.nodes_explored};
    row.lb_best = std::max(row.lb_best, rc.lower_bound);
  }
  row.gap = row.ub - row.lb_best;
  return row;
}

}  // namespace ngonxc
