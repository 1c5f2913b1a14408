#include <doctest.h>

#include <random>
#include <set>

#include "eichler/error.hpp"
#include "eichler/numth.hpp"

using namespace eichler;

namespace {

// Legendre symbol by listing squares.
int legendre_by_squares(i64 a, i64 q) {
  a = mod(a, q);
  if (a == 0) return 0;
  for (i64 x = 1; x < q; ++x)
    if (x * x % q == a) return 1;
  return -1;
}

bool prime_by_trial(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("kronecker") {
  CHECK(kronecker(101, 11) == -1);
  CHECK(kronecker(1, 15) == 1);
  CHECK(kronecker(2, 59) == -1);
  for (i64 q : {3, 5, 7, 11, 13, 59, 101, 103})
    for (i64 a = -60; a <= 60; ++a) CHECK(kronecker(a, q) == legendre_by_squares(a, q));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    i64 q = 0;
    while (!prime_by_trial(q) || q == 2) q = 3 + rng() % 500;
    i64 a = static_cast<i64>(rng() % 2000) - 1000, b = static_cast<i64>(rng() % 2000) - 1000;
    CHECK(kronecker(a, q) * kronecker(b, q) == kronecker(a * b, q));
  }
}

TEST_CASE("sqrt_mod_prime") {
  CHECK(sqrt_mod_prime(-303, 11) == 4);
  CHECK(sqrt_mod_prime(0, 7) == 0);
  CHECK(sqrt_mod_prime(-303, 59) == 13);
  CHECK_FALSE(sqrt_mod_prime(2, 11).has_value());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    i64 q = 0;
    while (!prime_by_trial(q) || q == 2) q = 3 + rng() % 3000;
    i64 a = static_cast<i64>(rng() % 100000) - 50000;
    auto x = sqrt_mod_prime(a, q);
    CHECK(x.has_value() == (legendre_by_squares(a, q) >= 0));
    if (x) {
      CHECK(mod(*x * *x - a, q) == 0);
      CHECK(*x <= q - *x);
    }
  }
}

TEST_CASE("lift_sqrt_mod_4q") {
  CHECK(lift_sqrt_mod_4q(13, 59, 303) == 13);
  CHECK(lift_sqrt_mod_4q(4, 11, 303) == 7);
  CHECK(lift_sqrt_mod_4q(1215, 1619, 303) == 1215);
  CHECK_THROWS_AS(lift_sqrt_mod_4q(1, 3, 5), Error);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(1619));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4848));
  for (i64 n = 0; n < 5000; ++n) CHECK(is_prime(n) == prime_by_trial(n));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("find_q") {
  auto qs = find_q(make_params(101, 3), 60);
  CHECK(std::count(qs.begin(), qs.end(), 11) == 1);
  CHECK(std::count(qs.begin(), qs.end(), 59) == 1);
  CHECK(find_q(make_params(101, 3), 10).empty());
  for (i64 q : find_q(make_params(11, 2), 50)) {
    CHECK(q % 8 == 7);
    CHECK(kronecker(11, q) == -1);
  }
  for (auto [p, c] : {std::pair<i64, i64>{101, 3}, {103, 2}, {199, 7}, {283, 5}})
    for (i64 q : find_q(make_params(p, c), 3000)) {
      CHECK(is_prime(q));
      CHECK(q % 8 == (c == 2 ? 7 : 3));
      CHECK(kronecker(p, q) == -1);
      CHECK(kronecker(-c * p, q) == 1);
    }
}

TEST_CASE("params") {
  CHECK_NOTHROW(make_params(101, 3));
  CHECK(params_problem(11, 7, Variant::Lambda).has_value());
  CHECK(params_problem(100, 3, Variant::Lambda).has_value());
  CHECK(lambda_prime_applies(101, 3));
  CHECK_FALSE(lambda_prime_applies(101, 5));
  CHECK_THROWS_AS(make_params(101, 5, Variant::LambdaPrime), Error);
}

TEST_CASE("represent") {
  CHECK(represent(3, 12) == std::vector<std::pair<i64, i64>>{{3, 1}});
  CHECK(represent(32, 12).empty());
  CHECK(represent(11, 12) == std::vector<std::pair<i64, i64>>{{1, 1}});
  for (i64 a = 1; a <= 60; ++a)
    for (i64 m = 1; m <= 80; ++m) {
      std::set<std::pair<i64, i64>> want;
      for (i64 x = 0; x * x <= m; ++x)
        for (i64 y = 0; a * y * y <= m; ++y)
          if (x * x + a * y * y == m && gcd(x, y) == 1) want.insert({x, y});
      auto got = represent(a, m);
      CHECK(std::set<std::pair<i64, i64>>(got.begin(), got.end()) == want);
    }
}
