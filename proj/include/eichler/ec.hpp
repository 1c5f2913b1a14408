#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eichler/ff.hpp"

namespace eichler {

// y^2 = x^3 + a4 x + a6 over F_{p^2}.
struct Curve {
  Fq a4, a6;

  static Curve make(const Fq& a4, const Fq& a6);  // throws Singular
  const FieldCtx* ctx() const { return a4.ctx(); }
  Fq rhs(const Fq& x) const { return (x * x + a4) * x + a6; }
  Poly rhs_poly() const;
  std::string str() const;
  friend bool operator==(const Curve& E, const Curve& F) { return E.a4 == F.a4 && E.a6 == F.a6; }
};

Fq j_invariant(const Curve& E);
Curve from_j(const Fq& j);
Curve conjugate(const Curve& E);
Curve quadratic_twist(const Curve& E, const Fq& d);

struct Point {
  Fq x, y;
  bool inf = true;

  static Point at_infinity() { return {}; }
  static Point affine(const Fq& x, const Fq& y) { return {x, y, false}; }
  friend bool operator==(const Point& P, const Point& Q) {
    return P.inf == Q.inf && (P.inf || (P.x == Q.x && P.y == Q.y));
  }
  Point frob() const { return inf ? *this : affine(x.frob(), y.frob()); }
  std::string str() const;
};

bool on_curve(const Curve& E, const Point& P);
Point neg(const Point& P);
Point add(const Curve& E, const Point& P, const Point& Q);
Point mul(const Curve& E, const Point& P, i64 k);

// Number of points over F_{p^2}; exhaustive, so p is capped.
i64 count_points(const Curve& E);
bool is_supersingular(const Curve& E);
constexpr i64 kMaxCountP = 3000;

// Nonzero n-torsion x-coordinates are exactly the roots: psi_n for odd n,
// psi_n^2 / (4 psi_2^2) * F for even n (i.e. the 2-torsion cubic times psi_n / 2y).
Poly division_poly(const Curve& E, int n);
// The x-only f_k with psi_k = f_k (k odd) or 2y f_k (k even), k = 0..n.
std::vector<Poly> division_table(const Curve& E, int n);

struct SubgroupKernel {
  Curve E;
  Poly kernel_poly;  // monic, roots x(Q) for Q in G minus 0, one per +-Q
  int order = 0;

  std::string str() const;
};
std::vector<SubgroupKernel> order_c_kernels(const Curve& E, int c);

// Normalized Velu isogeny with x-map N / D^2.
class Isogeny {
 public:
  Isogeny() = default;
  explicit Isogeny(const SubgroupKernel& K);

  const Curve& domain() const { return dom_; }
  const Curve& codomain() const { return cod_; }
  int degree() const { return degree_; }
  const Poly& kernel_poly() const { return D_; }

  Point operator()(const Point& P) const;
  Fq map_x(const Fq& x) const;
  // Image of another kernel (coprime degree) on the codomain.
  SubgroupKernel push(const SubgroupKernel& K) const;

 private:
  Curve dom_, cod_;
  int degree_ = 0;
  Poly D_, N_, dD_, dN_;
};

SubgroupKernel kernel_from_poly(const Curve& E, const Poly& D, int order);
Fq codomain_j(const SubgroupKernel& K);

// Isomorphisms E1 -> E2 as scalings (x, y) -> (u^2 x, u^3 y), ascending in u.
std::vector<Fq> isomorphisms(const Curve& E1, const Curve& E2);
Curve apply_iso(const Curve& E, const Fq& u);
Point apply_iso(const Point& P, const Fq& u);
Poly apply_iso(const Poly& kernel_poly, const Fq& u);
SubgroupKernel apply_iso(const SubgroupKernel& K, const Fq& u, const Curve& target);

// Power sums and their inverse (Newton's identities) for monic polynomials.
std::vector<Fq> power_sums(const Poly& monic_poly, int upto);
Poly from_power_sums(const FieldCtx* K, const std::vector<Fq>& sums, int degree);

// The model of j whose p^2-Frobenius is [-p]; models of j and j^p are Galois conjugates.
Curve canonical_curve(const Fq& j);
// All supersingular j-invariants in F_{p^2}, ascending.
std::vector<Fq> supersingular_js(i64 p);

// Deterministic point with the given index on E (enumerates x in a fixed order).
std::vector<Point> sample_points(const Curve& E, int count, std::uint64_t seed);
// Generators of E[n] for n = p + 1 on a canonical model.
std::pair<Point, Point> torsion_basis(const Curve& E, i64 n);

}  // namespace eichler
