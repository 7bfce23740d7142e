#include <doctest.h>

#include "ngonxc/bounds.hpp"
#include "ngonxc/errors.hpp"
#include "ngonxc/factorize.hpp"
#include "oracles.hpp"

using namespace ngonxc;

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(70, 35) == BigInt("112186277816662845432"));
  for (int a = 0; a <= 60; ++a)
    for (int b = 1; b <= a; ++b) REQUIRE(binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b));
}

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(factorial(25) == BigInt("15511210043330985984000000"));
  CHECK_THROWS_AS(factorial(-1), DomainError);
}

TEST_CASE("sperner bound") {
  CHECK(sperner_bound(6) == 4);
  CHECK(sperner_bound(1) == 1);
  CHECK(sperner_bound(7) == 5);
  CHECK(sperner_bound(2) == 2);
  CHECK_THROWS_AS(sperner_bound(0), DomainError);
  int prev = 1;
  for (long long p = 1; p <= 1'000'000; ++p) {
    const int r = sperner_bound(p);
    REQUIRE(r >= prev);
    prev = r;
  }
  for (long long p : {3LL, 20LL, 21LL, 70LL, 71LL, 924LL, 925LL, 999'999LL}) CHECK(sperner_bound(p) == oracle::sperner(p));
}

TEST_CASE("improved boolean bound") {
  CHECK(improved_boolean_bound(6) == 5);
  CHECK(improved_boolean_bound(13) == 7);
  CHECK(improved_boolean_bound(2) == 2);
  CHECK_THROWS_AS(improved_boolean_bound(1), DomainError);
  for (long long n = 2; n <= 1'000'000; ++n) {
    const int r = improved_boolean_bound(n);
    REQUIRE(r >= sperner_bound(n));
    if (n % 997 == 0 || n < 2000) REQUIRE(r == oracle::improved(n));
  }
}

TEST_CASE("face counts") {
  CHECK(faces(6, 3, 1) == 12);
  CHECK(faces(6, 3, 2) == 8);
  CHECK(faces(6, 4, 3) == 9);
  CHECK(faces(7, 2, 0) == 7);
  CHECK(faces(7, 2, 1) == 7);
  CHECK_THROWS_AS(faces(4, 4, 0), DomainError);
  CHECK_THROWS_AS(faces(6, 3, 3), DomainError);
  CHECK_THROWS_AS(faces(6, 0, 0), DomainError);
}

TEST_CASE("face counts of simplicial 3-polytopes") {
  for (int v = 4; v <= 60; ++v) {
    CHECK(faces(v, 3, 0) == v);
    CHECK(faces(v, 3, 1) == 3 * v - 6);
    CHECK(faces(v, 3, 2) == 2 * v - 4);
  }
}

TEST_CASE("face counts match cyclic polytope enumeration") {
  for (int d = 1; d <= 8; ++d)
    for (int v = d + 1; v <= 30; ++v)
      for (int k = 0; k < d; ++k)
        REQUIRE_MESSAGE(faces(v, d, k) == oracle::cyclic_face_count(v, d, k), v << " " << d << " " << k);
}

TEST_CASE("geometric bound") {
  CHECK(geometric_lower_bound(9) == 6);
  CHECK(geometric_lower_bound(10) == 7);
  CHECK(geometric_lower_bound(15) == 8);
  CHECK(geometric_lower_bound(21) == 9);
  CHECK(geometric_lower_bound(6) == 5);
  CHECK(geometric_lower_bound(3) == 3);
  CHECK(geometric_lower_bound(4) == 4);
  CHECK_THROWS_AS(geometric_lower_bound(2), DomainError);
}

TEST_CASE("log bound") {
  CHECK(trivial_log_bound(6) == 4);
  CHECK(trivial_log_bound(7) == 4);
  CHECK(trivial_log_bound(1000) == 11);
}

TEST_CASE("every lower bound is below the construction") {
  for (int n = 3; n <= 4096; ++n) {
    const int ub = upper_bound_size(n);
    REQUIRE(trivial_log_bound(n) <= ub);
    REQUIRE(sperner_bound(n) <= ub);
    REQUIRE(improved_boolean_bound(n) <= ub);
    REQUIRE(geometric_lower_bound(n) <= ub);
  }
}

TEST_CASE("f(k, z) minimization") {
  const auto r4 = minimize_fkz(4);
  CHECK(r4.min_f == 6);
  const std::vector<std::pair<int, int>> expect4{{1, 1}, {2, 1}};
  CHECK(r4.all_minimizers == expect4);

  const auto r5 = minimize_fkz(5);
  CHECK(r5.min_f == 16);
  REQUIRE(r5.all_minimizers.size() == 1);
  CHECK(r5.all_minimizers[0] == std::pair{2, 1});
  CHECK(r5.min_value == Rational(16, 120));

  const auto r2 = minimize_fkz(2);
  CHECK(r2.min_f == 1);
  CHECK(r2.all_minimizers.size() == 1);
  CHECK_THROWS_AS(minimize_fkz(1), DomainError);

  for (int r = 2; r <= 20; ++r) {
    const auto res = minimize_fkz(r);
    __int128 best = oracle::fkz(r, 1, 1);
    for (int k = 1; k < r; ++k)
      for (int z = 1; k + z <= r; ++z) best = std::min(best, oracle::fkz(r, k, z));
    CHECK(res.min_f == BigInt(static_cast<long long>(best)));
    CHECK(fkz(r, r / 2, 1) == res.min_f);
    if (r % 2 == 0) CHECK(fkz(r, r / 2 - 1, 1) == res.min_f);
  }
}

TEST_CASE("bounds rows") {
  const auto row = bounds_row(9, false);
  CHECK(row.lb_geometric == 6);
  CHECK(row.ub == 7);
  CHECK(row.lb_best == 6);
  CHECK(row.gap == 1);
  CHECK_FALSE(row.rcb.has_value());

  const auto r12 = bounds_row(12, false);
  CHECK(r12.lb_geometric == 7);
  CHECK(r12.gap == 0);

  const auto r21 = bounds_row(21, false);
  CHECK(r21.lb_geometric == 9);
  CHECK(r21.ub == 9);

  const auto r7 = bounds_row(7, true);
  REQUIRE(r7.rcb.has_value());
  CHECK(r7.rcb->optimal);
  CHECK(r7.rcb->value == 6);
  CHECK(r7.lb_best == 6);
  CHECK_THROWS_AS(bounds_row(2, false), DomainError);
}
