#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "eichler/numth.hpp"

namespace eichler {

// The form a X^2 + b XY + a' Y^2.
struct BQForm {
  i64 a = 0;
  i64 b = 0;
  i64 ap = 0;

  i64 disc() const { return b * b - 4 * a * ap; }
  bool primitive() const;
  bool reduced() const;
  // Order <= 2 in the class group, read off a reduced form.
  bool ambiguous() const { return b == 0 || a == b || a == ap; }
  i64 eval(i64 x, i64 y) const { return a * x * x + b * x * y + ap * y * y; }
  std::string str() const;

  friend bool operator==(const BQForm&, const BQForm&) = default;
};

// Display order used for tables: (a, |b|, sign of b).
bool table_less(const BQForm& f, const BQForm& g);

BQForm reduce(const BQForm& f);
BQForm identity_form(i64 D);
BQForm inverse(const BQForm& f);
BQForm compose(const BQForm& f, const BQForm& g);
BQForm power(const BQForm& f, i64 n);

const std::vector<BQForm>& class_group(i64 D);
i64 class_number(i64 D);
i64 form_order(const BQForm& f);

// Assigned characters: Legendre symbols at the odd primes dividing D, then
// delta, epsilon or delta*epsilon as dictated by D/4 mod 8.
struct Character {
  enum Kind { Odd, Delta, Epsilon, DeltaEpsilon } kind;
  i64 prime = 0;  // for Odd
  std::string name() const;
  int eval(i64 m) const;
};
std::vector<Character> assigned_characters(i64 D);
std::vector<int> genus_vector(i64 m, i64 D);
std::vector<int> genus_of_form(const BQForm& f);
// Lambda(q) / Lambda'(q), ordered (chi_p, chi_c or epsilon, delta).
std::vector<int> lambda_vector(const PrimeParams& params, i64 m);

i64 genus_disc(const PrimeParams& params);  // -16cp or -cp by variant
std::vector<BQForm> genus_class(const PrimeParams& params, i64 q);

struct AmbiguousReport {
  int count = 0;
  std::vector<BQForm> forms;
};
AmbiguousReport ambiguous_in_genus(const PrimeParams& params, i64 q);

std::optional<i64> represented_prime(const BQForm& f, const PrimeParams& params, i64 bound);
// All (x, y) with y >= 0 (x > 0 when y = 0) and f(x, y) <= bound.
std::vector<std::pair<i64, i64>> small_values(const BQForm& f, i64 bound);

// The lattice [n, (-b + sqrt(D))/2].
struct QuadIdeal {
  i64 n = 0;
  i64 b = 0;
  i64 D = 0;
  friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;
};
QuadIdeal form_to_ideal(const BQForm& f);
BQForm ideal_to_form(const QuadIdeal& I);
// Product of two ideals as lattices, returned as content * primitive ideal.
struct IdealProduct {
  i64 content = 1;
  QuadIdeal ideal;
};
IdealProduct ideal_multiply(const QuadIdeal& I, const QuadIdeal& J);

BQForm prime_splitting_form(i64 ell, const PrimeParams& params);
BQForm isogeny_action(const BQForm& f, const BQForm& g);

}  // namespace eichler
