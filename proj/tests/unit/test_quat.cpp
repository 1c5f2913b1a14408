#include <doctest.h>

#include <random>
#include <set>

#include "eichler/error.hpp"
#include "eichler/quat.hpp"

using namespace eichler;

namespace {

const PrimeParams kLam = make_params(101, 3);
const PrimeParams kPri = make_params(101, 3, Variant::LambdaPrime);

// |disc Z[gamma]| for gamma = x1 e1 + x2 e2 + x3 e3 with gcd(x) = 1, by a plain box scan.
std::set<i64> box_discs(const QuatOrder& O, i64 bound, int K) {
  std::set<i64> out;
  for (int x1 = -K; x1 <= K; ++x1)
    for (int x2 = -K; x2 <= K; ++x2)
      for (int x3 = -K; x3 <= K; ++x3) {
        if (gcd(gcd(x1, x2), x3) != 1) continue;
        QuatElement g = mpq_class(x1) * O.basis[1] + mpq_class(x2) * O.basis[2] + mpq_class(x3) * O.basis[3];
        mpq_class d = trd(g) * trd(g) - 4 * nrd(g);
        d = abs(d);
        if (d <= bound) out.insert(d.get_num().get_si());
      }
  return out;
}

}  // namespace

TEST_CASE("arithmetic") {
  QuatAlgebra A{303, 11};
  auto a = QuatElement::alpha(A), b = QuatElement::beta(A);
  CHECK(a * b == QuatElement::alphabeta(A));
  CHECK(b * a == mpq_class(-1) * QuatElement::alphabeta(A));
  CHECK(nrd(a) == 303);
  CHECK(trd(a) == 0);
  auto h = mpq_class(1, 2) * (QuatElement::one(A) + b);
  CHECK(nrd(h) == 3);
  CHECK(trd(h) == 1);
  CHECK_THROWS_AS(a * QuatElement::beta(QuatAlgebra{303, 59}), Error);

  std::mt19937_64 rng(17);
  auto rnd = [&] {
    auto r = [&] { return mpq_class(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6)); };
    return QuatElement::make(A, r(), r(), r(), r());
  };
  for (int t = 0; t < 200; ++t) {
    auto x = rnd(), y = rnd();
    CHECK(nrd(x * y) == nrd(x) * nrd(y));
    CHECK(trd(x * y) == trd(y * x));
    CHECK(conj(x * y) == conj(y) * conj(x));
  }
}

TEST_CASE("Eichler orders") {
  auto O = eichler_O(kLam, 11, 7);
  CHECK(is_order(O));
  CHECK(discriminant(O) == 91809);
  CHECK(order_to_form(O) == BQForm{11, 6, 111});
  auto Op = eichler_Oprime(kPri, 59, 13);
  CHECK(is_order(Op));
  CHECK(discriminant(Op) == 91809);
  CHECK(order_to_form(Op) == BQForm{2, -1, 38});
  CHECK(order_to_form(eichler_Oprime(kPri, 11, 7)) == BQForm{8, -7, 11});
  CHECK(order_to_form(eichler_O(kLam, 1619, 1215)) == BQForm{3, 0, 404});
  CHECK_THROWS_AS(eichler_O(kLam, 11, 3), Error);
  CHECK_THROWS_AS(eichler_O(kLam, 13, 1), Error);

  // Level 1 is maximal: disc p^2.
  PrimeParams p1{101, 1, Variant::Lambda};
  i64 q = find_q(p1, 1000).front();
  auto O1 = eichler_O(p1, q, *sqrt_mod_prime(-101, q));
  CHECK(discriminant(O1) == 101 * 101);
}

TEST_CASE("is_order and discriminant") {
  QuatAlgebra A{303, 11};
  auto Z = standard_order(A);
  CHECK(is_order(Z));
  CHECK(discriminant(Z) == mpz_class(4 * 303 * 11) * (4 * 303 * 11));
  std::array<QuatElement, 4> bad = eichler_O(kLam, 11, 7).basis;
  bad[1] = mpq_class(1, 3) * (QuatElement::one(A) + QuatElement::beta(A));
  CHECK_FALSE(is_order(bad));
  CHECK(discriminant(eichler_Otilde(kLam, 11, 7)) == 4 * 91809);
}

TEST_CASE("embedded discriminants") {
  auto O = eichler_O(kLam, 11, 7);
  auto d = embedded_discs(O, 200);
  REQUIRE(d.size() >= 2);
  CHECK(d[0] == 11);
  CHECK(d[1] == 111);
  CHECK(d.front() >= 3);
  auto dp = embedded_discs(eichler_Oprime(kPri, 11, 7), 200);
  REQUIRE(dp.size() >= 2);
  CHECK(dp[0] == 32);
  CHECK(dp[1] == 44);
  CHECK(embeds_quadratic(O, -11));
  CHECK_FALSE(embeds_quadratic(O, -1));
  CHECK(embeds_quadratic(eichler_O(kLam, 1619, 1215), -3));

  // Box-scan oracle: every value it finds is listed, and it reaches the first two.
  for (const auto& Q : {O, eichler_Oprime(kPri, 11, 7), eichler_O(kLam, 59, 13), eichler_Oprime(kPri, 59, 13)}) {
    auto listed = embedded_discs(Q, 400);
    auto scanned = box_discs(Q, 400, 14);
    for (i64 v : scanned) CHECK(std::count(listed.begin(), listed.end(), v) == 1);
    REQUIRE(listed.size() >= 2);
    CHECK(scanned.count(listed[0]) == 1);
    CHECK(scanned.count(listed[1]) == 1);
  }
}

TEST_CASE("intersection and index") {
  i64 q = 59, r = 13;
  auto O = eichler_O(kLam, q, r);
  auto Op = eichler_Oprime(kPri, q, lift_sqrt_mod_4q(r, q, 303));
  auto I = intersect(O, Op);
  CHECK(is_order(I));
  CHECK(discriminant(I) == 4 * 91809);
  CHECK(same_lattice(I, eichler_Otilde(kLam, q, r)));
  CHECK(index(I, O) == 2);
  CHECK(index(I, Op) == 2);
  CHECK(same_lattice(intersect(O, O), O));
  CHECK_THROWS_AS(index(O, I), Error);
}
