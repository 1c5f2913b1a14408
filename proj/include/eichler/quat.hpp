#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "eichler/numth.hpp"
#include "eichler/qform.hpp"

namespace eichler {

// H(-cp, -q): alpha^2 = -cp, beta^2 = -q, alpha*beta = -beta*alpha.
struct QuatAlgebra {
  i64 cp = 0;
  i64 q = 0;
  friend bool operator==(const QuatAlgebra&, const QuatAlgebra&) = default;
};

// Coordinates (w, x, y, z) on the basis 1, alpha, beta, alpha*beta.
struct QuatElement {
  QuatAlgebra alg;
  std::array<mpq_class, 4> c;

  static QuatElement make(const QuatAlgebra& A, mpq_class w, mpq_class x, mpq_class y, mpq_class z);
  static QuatElement one(const QuatAlgebra& A) { return make(A, 1, 0, 0, 0); }
  static QuatElement alpha(const QuatAlgebra& A) { return make(A, 0, 1, 0, 0); }
  static QuatElement beta(const QuatAlgebra& A) { return make(A, 0, 0, 1, 0); }
  static QuatElement alphabeta(const QuatAlgebra& A) { return make(A, 0, 0, 0, 1); }

  bool is_zero() const;
  std::string str() const;
  friend bool operator==(const QuatElement& x, const QuatElement& y) { return x.alg == y.alg && x.c == y.c; }
};

QuatElement operator+(const QuatElement& x, const QuatElement& y);
QuatElement operator-(const QuatElement& x, const QuatElement& y);
QuatElement operator*(const QuatElement& x, const QuatElement& y);
QuatElement operator*(const mpq_class& s, const QuatElement& x);
QuatElement mul(const QuatElement& x, const QuatElement& y);
QuatElement conj(const QuatElement& x);
mpq_class trd(const QuatElement& x);
mpq_class nrd(const QuatElement& x);

struct OrderLabel {
  i64 q = 0;
  i64 r = 0;  // r for O_c(q, r), r' for O'_c(q, r')
  Variant variant = Variant::Lambda;
  i64 p = 0;
  i64 c = 0;
};

struct QuatOrder {
  QuatAlgebra alg;
  std::array<QuatElement, 4> basis;
  std::optional<OrderLabel> label;
  std::string name;

  std::array<std::array<mpq_class, 4>, 4> gram() const;  // Trd(e_i conj(e_j))
};

QuatAlgebra algebra_for(const PrimeParams& params, i64 q);
QuatOrder eichler_O(const PrimeParams& params, i64 q, i64 r);
QuatOrder eichler_Oprime(const PrimeParams& params, i64 q, i64 rprime);
QuatOrder eichler_Otilde(const PrimeParams& params, i64 q, i64 r);
QuatOrder standard_order(const QuatAlgebra& A);  // Z + Z alpha + Z beta + Z alpha beta
QuatOrder lattice_from(const QuatAlgebra& A, const std::array<QuatElement, 4>& basis, std::string name = "");

// Coordinates of x in the basis, if the basis is independent.
std::optional<std::array<mpq_class, 4>> coordinates(const std::array<QuatElement, 4>& basis, const QuatElement& x);
bool contains(const QuatOrder& O, const QuatElement& x);
bool is_order(const std::array<QuatElement, 4>& basis);
bool is_order(const QuatOrder& O);
mpz_class discriminant(const QuatOrder& O);
QuatOrder intersect(const QuatOrder& O1, const QuatOrder& O2);
mpz_class index(const QuatOrder& sub, const QuatOrder& sup);
bool same_lattice(const QuatOrder& O1, const QuatOrder& O2);

BQForm order_to_form(const QuatOrder& O);

// Distinct |disc Z[gamma]| <= bound over gamma primitive in O/Z, ascending.
std::vector<i64> embedded_discs(const QuatOrder& O, i64 bound);
bool embeds_quadratic(const QuatOrder& O, i64 D);

}  // namespace eichler
