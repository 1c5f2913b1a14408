#include "eichler/ec.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "eichler/classpoly.hpp"
#include "eichler/error.hpp"
#include "eichler/modpoly.hpp"

namespace eichler {

Curve Curve::make(const Fq& a4, const Fq& a6) {
  Fq d = a4 * a4 * a4 * 4 + a6 * a6 * 27;
  if (d.is_zero()) throw Error(Errc::Singular, "4a^3 + 27b^2 = 0");
  return Curve{a4, a6};
}

Poly Curve::rhs_poly() const {
  const FieldCtx* K = ctx();
  return Poly(K, {a6, a4, Fq(K, 0), Fq(K, 1)});
}

std::string Curve::str() const { return "y^2 = x^3 + (" + a4.str() + ")*x + " + a6.str(); }

Fq j_invariant(const Curve& E) {
  Fq a3 = E.a4 * E.a4 * E.a4 * 4;
  Fq d = a3 + E.a6 * E.a6 * 27;
  if (d.is_zero()) throw Error(Errc::Singular, "singular curve");
  return a3 * 1728 / d;
}

Curve from_j(const Fq& j) {
  const FieldCtx* K = j.ctx();
  if (j.is_zero()) return Curve::make(Fq(K, 0), Fq(K, 1));
  if (j == Fq(K, 1728)) return Curve::make(Fq(K, 1), Fq(K, 0));
  Fq k = Fq(K, 1728) - j;
  return Curve::make(j * k * 3, j * k * k * 2);
}

Curve conjugate(const Curve& E) { return Curve{E.a4.frob(), E.a6.frob()}; }

Curve quadratic_twist(const Curve& E, const Fq& d) { return Curve::make(E.a4 * d * d, E.a6 * d * d * d); }

std::string Point::str() const {
  if (inf) return "O";
  return "(" + x.str() + ", " + y.str() + ")";
}

bool on_curve(const Curve& E, const Point& P) { return P.inf || P.y * P.y == E.rhs(P.x); }

Point neg(const Point& P) { return P.inf ? P : Point::affine(P.x, -P.y); }

Point add(const Curve& E, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  Fq lam;
  if (P.x == Q.x) {
    if ((P.y + Q.y).is_zero()) return Point::at_infinity();
    lam = (P.x * P.x * 3 + E.a4) / (P.y * 2);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  Fq x3 = lam * lam - P.x - Q.x;
  Fq y3 = lam * (P.x - x3) - P.y;
  return Point::affine(x3, y3);
}

Point mul(const Curve& E, const Point& P, i64 k) {
  if (k < 0) return mul(E, neg(P), -k);
  Point r = Point::at_infinity(), b = P;
  while (k) {
    if (k & 1) r = add(E, r, b);
    b = add(E, b, b);
    k >>= 1;
  }
  return r;
}

i64 count_points(const Curve& E) {
  const FieldCtx* K = E.ctx();
  const i64 p = K->p;
  if (p > kMaxCountP) throw Error(Errc::PTooLarge, "point counting is exhaustive; p = " + std::to_string(p));
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (i64 t = 1; t < p; ++t) chi[t * t % p] = 1;
  i64 n = 1;
  for (i64 u = 0; u < p; ++u)
    for (i64 v = 0; v < p; ++v) {
      Fq x(K, u, v);
      Fq r = E.rhs(x);
      n += 1 + (r.is_zero() ? 0 : chi[r.norm()]);
    }
  return n;
}

bool is_supersingular(const Curve& E) {
  const i64 p = E.ctx()->p;
  const i64 t = p * p + 1 - count_points(E);
  return mod(t, p) == 0;
}

std::vector<Poly> division_table(const Curve& E, int n) {
  const FieldCtx* K = E.ctx();
  const Fq a = E.a4, b = E.a6;
  const Fq z(K, 0);
  std::vector<Poly> f(std::max(n + 1, 5), Poly(K));
  f[1] = Poly::constant(Fq(K, 1));
  f[2] = f[1];
  f[3] = Poly(K, {-(a * a), b * 12, a * 6, z, Fq(K, 3)});
  f[4] = Poly(K, {(b * b * 8 + a * a * a) * -2, a * b * -8, a * a * -10, b * 40, a * 10, z, Fq(K, 2)});
  const Poly F = E.rhs_poly();
  const Poly F2x16 = F * F * Fq(K, 16);
  for (int k = 5; k <= n; ++k) {
    int m = k / 2;
    if (k % 2) {
      Poly t1 = f[m + 2] * f[m] * f[m] * f[m];
      Poly t2 = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
      f[k] = (m % 2 == 0) ? F2x16 * t1 - t2 : t1 - F2x16 * t2;
    } else {
      f[k] = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]);
    }
  }
  f.resize(n + 1);
  return f;
}

Poly division_poly(const Curve& E, int n) {
  const i64 p = E.ctx()->p;
  if (n < 1 || n % p == 0) throw Error(Errc::BadN, "n = " + std::to_string(n));
  Poly fn = division_table(E, n)[n];
  return n % 2 ? fn : E.rhs_poly() * fn;
}

std::string SubgroupKernel::str() const {
  if (kernel_poly.degree() == 1) return "x-root " + (-kernel_poly.coeff(0)).str();
  return "kernel " + kernel_poly.str("x");
}

std::vector<Fq> power_sums(const Poly& f, int upto) {
  const FieldCtx* K = f.ctx();
  const int d = f.degree();
  std::vector<Fq> e(std::max(d, upto) + 1, Fq(K, 0));
  e[0] = Fq(K, 1);
  for (int i = 1; i <= d; ++i) e[i] = (i % 2 ? -f.coeff(d - i) : f.coeff(d - i));
  std::vector<Fq> P(upto + 1, Fq(K, 0));
  P[0] = Fq(K, d);
  for (int k = 1; k <= upto; ++k) {
    Fq s = e[k] * k;
    if (k % 2 == 0) s = -s;
    for (int i = 1; i < k; ++i) {
      Fq t = e[i] * P[k - i];
      s += (i % 2 ? t : -t);
    }
    P[k] = s;
  }
  return P;
}

Poly from_power_sums(const FieldCtx* K, const std::vector<Fq>& P, int d) {
  std::vector<Fq> e(d + 1, Fq(K, 0));
  e[0] = Fq(K, 1);
  for (int k = 1; k <= d; ++k) {
    Fq s(K, 0);
    for (int i = 1; i <= k; ++i) {
      Fq t = e[k - i] * P[i];
      s += (i % 2 ? t : -t);
    }
    e[k] = s / Fq(K, k);
  }
  std::vector<Fq> c(d + 1, Fq(K, 0));
  for (int k = 0; k <= d; ++k) c[d - k] = (k % 2 ? -e[k] : e[k]);
  return Poly(K, c);
}

namespace {

bool is_prime_int(int n) { return n >= 2 && is_prime(static_cast<u64>(n)); }

// Half-kernel x-coordinates of <theta> in L = F[x]/(g), from the x-only multiplication maps.
std::optional<Poly> kernel_through(const Curve& E, const std::vector<Poly>& f, const Poly& g, int c) {
  const FieldCtx* K = E.ctx();
  const int d = (c - 1) / 2;
  const Poly X = Poly::x(K) % g;
  const Poly F = E.rhs_poly() % g;
  auto inv = [&](const Poly& h) {
    auto [gg, s] = poly_gcdinv(h % g, g);
    if (gg.degree() != 0) throw Error(Errc::InvalidKernel, "non-invertible element in a torsion field");
    return s;
  };
  std::vector<Poly> xs;
  for (int k = 1; k <= d; ++k) {
    Poly fk2 = mulmod(f[k], f[k], g);
    Poly num = mulmod(f[k - 1], f[k + 1], g);
    Poly xk;
    if (k % 2) {
      xk = X - mulmod(mulmod(num, F * Fq(K, 4), g), inv(fk2), g);
    } else {
      xk = X - mulmod(num, inv(mulmod(fk2, F * Fq(K, 4), g)), g);
    }
    xs.push_back(xk % g);
  }
  std::vector<Fq> P(d + 1, Fq(K, 0));
  P[0] = Fq(K, d);
  std::vector<Poly> pw = xs;
  for (int m = 1; m <= d; ++m) {
    Poly s(K);
    for (auto& t : pw) s = s + t;
    if (s.degree() > 0) return std::nullopt;
    P[m] = s.coeff(0);
    for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = mulmod(pw[i], xs[i], g);
  }
  return from_power_sums(K, P, d);
}

}  // namespace

std::vector<SubgroupKernel> order_c_kernels(const Curve& E, int c) {
  const i64 p = E.ctx()->p;
  if (!is_prime_int(c) || c == p) throw Error(Errc::BadN, "kernel order must be a prime other than p");
  std::vector<SubgroupKernel> out;
  if (c == 2) {
    for (const Fq& r : distinct_roots(E.rhs_poly(), true)) out.push_back({E, Poly::linear_root(r), 2});
    return out;
  }
  auto f = division_table(E, (c + 1) / 2 + 1);
  Poly fc = division_table(E, c)[c];
  std::vector<Poly> found;
  for (const auto& [g, m] : factor(fc, true)) {
    bool known = std::any_of(found.begin(), found.end(), [&](const Poly& k) { return (k % g).is_zero(); });
    if (known) continue;
    auto k = kernel_through(E, f, g, c);
    if (!k) continue;
    found.push_back(*k);
  }
  std::sort(found.begin(), found.end(), [](const Poly& a, const Poly& b) {
    for (int i = a.degree(); i >= 0; --i)
      if (!(a.coeff(i) == b.coeff(i))) return a.coeff(i) < b.coeff(i);
    return false;
  });
  for (auto& k : found) out.push_back({E, k, c});
  return out;
}

SubgroupKernel kernel_from_poly(const Curve& E, const Poly& D, int order) {
  const int d = D.degree();
  if (order == 2 ? d != 1 : (order % 2 == 0 || 2 * d + 1 != order))
    throw Error(Errc::InvalidKernel, "kernel polynomial degree does not match the order");
  Poly Dm = D.monic();
  Poly target = order == 2 ? E.rhs_poly() : division_table(E, order)[order];
  if (!(target % Dm).is_zero()) throw Error(Errc::InvalidKernel, "kernel polynomial does not divide the division polynomial");
  return {E, Dm, order};
}

Isogeny::Isogeny(const SubgroupKernel& Kern) : dom_(Kern.E), degree_(Kern.order), D_(Kern.kernel_poly.monic()) {
  const FieldCtx* K = dom_.ctx();
  const Fq a = dom_.a4, b = dom_.a6;
  const bool two = degree_ == 2;
  const int d = D_.degree();
  if (two ? d != 1 : 2 * d + 1 != degree_) throw Error(Errc::InvalidKernel, "degree mismatch");
  auto P = power_sums(D_, 3);
  const Fq dd(K, d);
  Fq sum_t = two ? P[2] * 3 + a * dd : P[2] * 6 + a * dd * 2;
  Fq sum_w = two ? P[3] * 3 + a * P[1] : P[3] * 10 + a * P[1] * 6 + b * dd * 4;
  cod_ = Curve::make(a - sum_t * 5, b - sum_w * 7);
  const Fq z(K, 0);
  Poly t = two ? Poly(K, {a, z, Fq(K, 3)}) : Poly(K, {a * 2, z, Fq(K, 6)});
  Poly u = two ? Poly(K) : dom_.rhs_poly() * Fq(K, 4);
  dD_ = D_.derivative();
  Poly Rt = (t * dD_) % D_;
  Poly Ru = (u * dD_) % D_;
  N_ = Poly::x(K) * D_ * D_ + Rt * D_ - Ru.derivative() * D_ + Ru * dD_;
  dN_ = N_.derivative();
}

Fq Isogeny::map_x(const Fq& x) const {
  Fq Dv = D_.eval(x);
  if (Dv.is_zero()) throw Error(Errc::InvalidKernel, "x-coordinate lies in the kernel");
  return N_.eval(x) / (Dv * Dv);
}

Point Isogeny::operator()(const Point& P) const {
  if (P.inf) return P;
  Fq Dv = D_.eval(P.x);
  if (Dv.is_zero()) return Point::at_infinity();
  Fq Nv = N_.eval(P.x);
  Fq X = Nv / (Dv * Dv);
  Fq dX = (dN_.eval(P.x) * Dv - Nv * dD_.eval(P.x) * 2) / (Dv * Dv * Dv);
  return Point::affine(X, P.y * dX);
}

SubgroupKernel Isogeny::push(const SubgroupKernel& G) const {
  if (!(G.E == dom_)) throw Error(Errc::InvalidKernel, "kernel lives on another curve");
  const FieldCtx* K = dom_.ctx();
  const Poly& K2 = G.kernel_poly;
  const int d2 = K2.degree();
  auto [g, Dinv2] = poly_gcdinv((D_ * D_) % K2, K2);
  if (g.degree() != 0) throw Error(Errc::InvalidKernel, "kernels intersect");
  Poly theta = mulmod(N_ % K2, Dinv2, K2);
  auto S = power_sums(K2, std::max(d2 - 1, 0));
  auto trace = [&](const Poly& h) {
    Fq s(K, 0);
    for (int i = 0; i <= h.degree(); ++i) s += h.coeff(i) * S[i];
    return s;
  };
  std::vector<Fq> P(d2 + 1, Fq(K, 0));
  P[0] = Fq(K, d2);
  Poly pw = theta;
  for (int m = 1; m <= d2; ++m) {
    P[m] = trace(pw);
    pw = mulmod(pw, theta, K2);
  }
  return {cod_, from_power_sums(K, P, d2), G.order};
}

Fq codomain_j(const SubgroupKernel& K) { return j_invariant(Isogeny(K).codomain()); }

std::vector<Fq> isomorphisms(const Curve& E1, const Curve& E2) {
  if (!(j_invariant(E1) == j_invariant(E2))) return {};
  const FieldCtx* K = E1.ctx();
  std::vector<Fq> cands;
  auto roots_of = [&](int k, const Fq& c) {
    std::vector<Fq> co(k + 1, Fq(K, 0));
    co[0] = -c;
    co[k] = Fq(K, 1);
    return distinct_roots(Poly(K, co), true);
  };
  if (E1.a4.is_zero()) {
    cands = roots_of(6, E2.a6 / E1.a6);
  } else if (E1.a6.is_zero()) {
    cands = roots_of(4, E2.a4 / E1.a4);
  } else {
    Fq u2 = (E2.a6 * E1.a4) / (E1.a6 * E2.a4), u;
    if (u2.sqrt(u)) cands = {u, -u};
  }
  std::vector<Fq> out;
  for (const Fq& u : cands) {
    Fq u2 = u * u;
    if (u2 * u2 * E1.a4 == E2.a4 && u2 * u2 * u2 * E1.a6 == E2.a6) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Curve apply_iso(const Curve& E, const Fq& u) {
  Fq u2 = u * u;
  return Curve{u2 * u2 * E.a4, u2 * u2 * u2 * E.a6};
}

Point apply_iso(const Point& P, const Fq& u) {
  if (P.inf) return P;
  Fq u2 = u * u;
  return Point::affine(u2 * P.x, u2 * u * P.y);
}

Poly apply_iso(const Poly& k, const Fq& u) {
  const int d = k.degree();
  Fq u2 = u * u;
  std::vector<Fq> c = k.coeffs();
  Fq s(k.ctx(), 1);
  for (int i = d; i >= 0; --i) {
    c[i] *= s;
    s *= u2;
  }
  return Poly(k.ctx(), c);
}

SubgroupKernel apply_iso(const SubgroupKernel& G, const Fq& u, const Curve& target) {
  return {target, apply_iso(G.kernel_poly, u), G.order};
}

std::vector<Point> sample_points(const Curve& E, int count, std::uint64_t seed) {
  const FieldCtx* K = E.ctx();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> d(0, K->p - 1);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    Fq x(K, d(rng), d(rng));
    Fq y;
    if (!E.rhs(x).sqrt(y)) continue;
    if (rng() & 1) y = -y;
    out.push_back(Point::affine(x, y));
  }
  return out;
}

Curve canonical_curve(const Fq& j) {
  if (j.in_Fp()) return from_j(j);
  if (j.frob() < j) return conjugate(canonical_curve(j.frob()));
  const FieldCtx* K = j.ctx();
  Curve E = from_j(j);
  const i64 n = K->p + 1;
  bool minus_p = true;
  for (const Point& P : sample_points(E, 6, 0xc0ffee)) {
    if (!mul(E, P, n).inf) {
      minus_p = false;
      break;
    }
  }
  if (minus_p) return E;
  Fq d;
  for (i64 u = 0;; ++u) {
    d = Fq(K, u, 1);
    if (!d.is_square()) break;
  }
  return quadratic_twist(E, d);
}

std::pair<Point, Point> torsion_basis(const Curve& E, i64 n) {
  auto primes = prime_factors(n);
  auto independent = [&](const Point& Q1, const Point& Q2, i64 r) {
    if (Q1.inf) return false;
    Point m = Point::at_infinity();
    for (i64 k = 0; k < r; ++k) {
      if (m == Q2) return false;
      m = add(E, m, Q1);
    }
    return true;
  };
  auto pts = sample_points(E, 64, 0xba515);
  for (const auto& P : pts)
    if (!mul(E, P, n).inf) throw Error(Errc::BadParams, "curve is not a model with Frobenius -p");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      bool ok = true;
      for (i64 r : primes) {
        if (!independent(mul(E, pts[i], n / r), mul(E, pts[k], n / r), r)) {
          ok = false;
          break;
        }
      }
      if (ok) return {pts[i], pts[k]};
    }
  }
  throw Error(Errc::BadParams, "no torsion basis among sampled points");
}

std::vector<Fq> supersingular_js(i64 p) {
  const FieldCtx* K = fp2_ctx(p);
  Fq start;
  if (p % 4 == 3) {
    start = Fq(K, 1728);
  } else if (p % 3 == 2) {
    start = Fq(K, 0);
  } else {
    bool found = false;
    for (i64 D = -7; !found; --D) {
      if (mod(D, 4) > 1 || kronecker(D, p) != -1) continue;
      auto rs = distinct_roots(hilbert_mod(D, p), true);
      if (!rs.empty()) {
        start = rs[0];
        found = true;
      }
    }
  }
  const auto& phi2 = phi_poly(2);
  std::set<Fq> seen{start};
  std::deque<Fq> todo{start};
  while (!todo.empty()) {
    Fq j = todo.front();
    todo.pop_front();
    for (const Fq& k : distinct_roots(phi_in_y(phi2, j), true))
      if (seen.insert(k).second) todo.push_back(k);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace eichler
