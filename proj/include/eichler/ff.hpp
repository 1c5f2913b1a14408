#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eichler/numth.hpp"

namespace eichler {

// F_{p^2} = F_p(a) with a^2 = -n, n the least positive integer making -n a non-residue.
struct FieldCtx {
  i64 p = 0;
  i64 n = 0;
};

// Contexts are interned: one object per p, alive for the whole program.
const FieldCtx* fp2_ctx(i64 p);

class Fq {
 public:
  Fq() = default;
  Fq(const FieldCtx* K, i64 u, i64 v = 0);

  const FieldCtx* ctx() const { return K_; }
  i64 u() const { return u_; }
  i64 v() const { return v_; }
  i64 p() const { return K_->p; }

  bool is_zero() const { return u_ == 0 && v_ == 0; }
  bool is_one() const { return u_ == 1 && v_ == 0; }
  bool in_Fp() const { return v_ == 0; }

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator-() const;
  Fq operator*(const Fq& o) const;
  Fq operator*(i64 s) const;
  Fq operator/(const Fq& o) const { return *this * o.inv(); }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }

  Fq inv() const;
  Fq pow(const mpz_class& e) const;
  Fq pow(u64 e) const;
  Fq frob() const { return Fq(K_, u_, v_ == 0 ? 0 : K_->p - v_, true); }
  i64 norm() const;
  bool is_square() const;
  bool sqrt(Fq& out) const;

  std::string str() const;  // "u" or "u+v*a"
  friend bool operator==(const Fq& x, const Fq& y) { return x.u_ == y.u_ && x.v_ == y.v_; }
  friend bool operator<(const Fq& x, const Fq& y) { return x.v_ != y.v_ ? x.v_ < y.v_ : x.u_ < y.u_; }

 private:
  Fq(const FieldCtx* K, i64 u, i64 v, bool) : K_(K), u_(u), v_(v) {}
  const FieldCtx* K_ = nullptr;
  i64 u_ = 0, v_ = 0;
};

// Dense polynomial over F_{p^2}, coefficients ascending.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FieldCtx* K) : K_(K) {}
  Poly(const FieldCtx* K, std::vector<Fq> c);
  static Poly constant(const Fq& c);
  static Poly x(const FieldCtx* K);
  static Poly linear_root(const Fq& r);  // X - r
  static Poly from_ints(const FieldCtx* K, const std::vector<i64>& c);
  static Poly from_mpz(const FieldCtx* K, const std::vector<mpz_class>& c);

  const FieldCtx* ctx() const { return K_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(int i) const;
  Fq lead() const { return coeff(degree()); }
  bool in_Fp() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Fq& s) const;
  Poly operator%(const Poly& m) const;
  Poly operator/(const Poly& m) const;
  std::pair<Poly, Poly> divmod(const Poly& m) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Fq eval(const Fq& x) const;
  Poly monic() const;
  Poly derivative() const;
  Poly frob() const;
  Poly compose(const Poly& g) const;  // f(g(X))
  std::string str(const std::string& var = "X") const;

 private:
  void trim();
  const FieldCtx* K_ = nullptr;
  std::vector<Fq> c_;
};

Poly poly_gcd(const Poly& f, const Poly& g);
// Extended Euclid: returns (g, s) with s*f = g (mod m).
std::pair<Poly, Poly> poly_gcdinv(const Poly& f, const Poly& m);
Poly powmod(const Poly& base, const mpz_class& e, const Poly& m);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);

// Roots with multiplicity, ascending; F_p only unless in_extension.
std::vector<Fq> roots(const Poly& f, bool in_extension);
std::vector<Fq> distinct_roots(const Poly& f, bool in_extension);

struct Factor {
  Poly f;
  int mult;
};
// Monic irreducible factors over F_p or F_{p^2}, sorted by (degree, coefficients).
std::vector<Factor> factor(const Poly& f, bool in_extension, std::uint64_t seed = 1);
std::string factor_str(const std::vector<Factor>& fs, const std::string& var = "X");

}  // namespace eichler
