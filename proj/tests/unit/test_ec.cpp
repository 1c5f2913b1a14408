#include <doctest.h>

#include <random>
#include <set>

#include "eichler/ec.hpp"
#include "eichler/error.hpp"
#include "eichler/modpoly.hpp"
#include "eichler/oriented.hpp"

using namespace eichler;

namespace {

const FieldCtx* K101() { return fp2_ctx(101); }
Fq el(i64 u, i64 v = 0) { return Fq(K101(), u, v); }

// All affine points over F_{p^2}.
std::vector<Point> all_points(const Curve& E) {
  const FieldCtx* K = E.ctx();
  std::vector<Point> out;
  for (i64 v = 0; v < K->p; ++v)
    for (i64 u = 0; u < K->p; ++u) {
      Fq x(K, u, v), y;
      if (!E.rhs(x).sqrt(y)) continue;
      out.push_back(Point::affine(x, y));
      if (!y.is_zero()) out.push_back(Point::affine(x, -y));
    }
  return out;
}

}  // namespace

TEST_CASE("j-invariants and models") {
  CHECK(from_j(el(0)) == Curve::make(el(0), el(1)));
  CHECK(j_invariant(Curve::make(el(8), el(85))) == el(66));
  CHECK_THROWS_AS(Curve::make(el(0), el(0)), Error);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    Fq j = el(rng() % 101, rng() % 101);
    Curve E = from_j(j);
    CHECK(j_invariant(E) == j);
    CHECK(j_invariant(conjugate(E)) == j.frob());
  }
}

TEST_CASE("supersingularity") {
  CHECK(is_supersingular(from_j(el(66))));
  CHECK(is_supersingular(from_j(Fq(fp2_ctx(103), 1728))));
  CHECK_FALSE(is_supersingular(from_j(Fq(fp2_ctx(5), 1))));
  // Enumeration oracle over all j for a small prime.
  for (i64 p : {23, 29}) {
    std::vector<Fq> brute;
    const FieldCtx* K = fp2_ctx(p);
    for (i64 v = 0; v < p; ++v)
      for (i64 u = 0; u < p; ++u) {
        Fq j(K, u, v);
        i64 n = count_points(from_j(j));
        if ((p * p + 1 - n) % p == 0) brute.push_back(j);
      }
    std::sort(brute.begin(), brute.end());
    CHECK(supersingular_js(p) == brute);
  }
  // The chosen models have Frobenius -p, so E(F_{p^2}) has (p+1)^2 points.
  for (const auto& j : supersingular_js(101)) CHECK(count_points(canonical_curve(j)) == 102 * 102);
}

TEST_CASE("point counts") {
  const FieldCtx* K = fp2_ctx(13);
  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) {
    Fq a4(K, rng() % 13, rng() % 13), a6(K, rng() % 13, rng() % 13);
    if ((a4 * a4 * a4 * 4 + a6 * a6 * 27).is_zero()) continue;
    Curve E = Curve::make(a4, a6);
    CHECK(count_points(E) == static_cast<i64>(all_points(E).size()) + 1);
  }
}

TEST_CASE("division polynomials") {
  for (i64 p : {13, 17}) {
    const FieldCtx* K = fp2_ctx(p);
    std::mt19937_64 rng(41 + p);
    for (int t = 0; t < 4; ++t) {
      Curve E = Curve::make(Fq(K, 1 + rng() % (p - 1), rng() % p), Fq(K, rng() % p, rng() % p));
      auto pts = all_points(E);
      for (int n : {2, 3, 4, 5}) {
        std::set<Fq> torsion_x;
        for (const auto& P : pts)
          if (mul(E, P, n).inf) torsion_x.insert(P.x);
        std::set<Fq> root_x;
        for (const auto& x : distinct_roots(division_poly(E, n), true))
          if (E.rhs(x).is_square()) root_x.insert(x);
        CHECK(root_x == torsion_x);
      }
    }
  }
  CHECK(division_poly(from_j(el(66)), 3).degree() == 4);
}

TEST_CASE("kernels and Velu") {
  Curve E1 = Curve::make(el(8), el(85));
  auto ks = order_c_kernels(E1, 3);
  CHECK(ks.size() == 4);
  std::set<Fq> xs;
  for (const auto& k : ks) xs.insert(-k.kernel_poly.coeff(0));
  CHECK(xs.count(el(50)) == 1);
  CHECK(xs.count(el(49)) == 1);
  int passing = 0;
  for (const auto& k : ks) passing += c_epsilon_test(k);
  CHECK(passing == 1);
  for (const auto& k : ks)
    if (k.kernel_poly == Poly::linear_root(el(50))) CHECK(codomain_j(k) == el(66));

  // y^2 = x^3 - x with kernel x = 0 lands on j = 1728.
  const FieldCtx* K = fp2_ctx(103);
  Curve E = Curve::make(Fq(K, -1), Fq(K, 0));
  auto G = kernel_from_poly(E, Poly::x(K), 2);
  CHECK(codomain_j(G) == Fq(K, 1728));

  // Homomorphism and modular-polynomial consistency.
  for (const auto& k : ks) {
    Isogeny phi(k);
    CHECK(phi.degree() == 3);
    auto pts = sample_points(E1, 8, 47);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Point lhs = phi(add(E1, pts[i], pts[i + 1]));
      Point rhs = add(phi.codomain(), phi(pts[i]), phi(pts[i + 1]));
      CHECK(lhs == rhs);
      CHECK(on_curve(phi.codomain(), phi(pts[i])));
    }
    CHECK(phi_eval(phi_poly(3), j_invariant(E1), j_invariant(phi.codomain())).is_zero());
  }
}

TEST_CASE("modular polynomials") {
  CHECK(validate_modular_polynomial(phi_poly(2)).empty());
  CHECK(validate_modular_polynomial(phi_poly(3)).empty());
  CHECK_THROWS_AS(phi_poly(5), Error);
  std::mt19937_64 rng(53);
  for (int ell : {2, 3}) {
    const auto& phi = phi_poly(ell);
    for (int t = 0; t < 100; ++t) {
      Fq x = el(rng() % 101, rng() % 101), y = el(rng() % 101, rng() % 101);
      CHECK(phi_eval(phi, x, y) == phi_eval(phi, y, x));
    }
  }
  // Random Velu isogenies over F_{p^2}.
  auto js = supersingular_js(101);
  for (int ell : {2, 3})
    for (const auto& j : js) {
      Curve E = canonical_curve(j);
      for (const auto& k : order_c_kernels(E, ell)) CHECK(phi_eval(phi_poly(ell), j, codomain_j(k)).is_zero());
    }
  CHECK(isogeny_count(el(66), el(66), 3) == 1);
  CHECK(isogeny_count(el(21), el(21), 3) == 2);
  CHECK(isogeny_count(el(57), el(57), 3) == 2);
  CHECK(isogeny_count(el(37, 10), el(37, 91), 3) == 2);
}

TEST_CASE("isomorphisms") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 30; ++t) {
    Curve E = from_j(el(rng() % 101, rng() % 101));
    Fq u = el(1 + rng() % 100, rng() % 101);
    Curve F = apply_iso(E, u);
    auto us = isomorphisms(E, F);
    CHECK(std::count(us.begin(), us.end(), u) == 1);
    for (const auto& P : sample_points(E, 3, t)) CHECK(on_curve(F, apply_iso(P, u)));
  }
}

TEST_CASE("oriented graph for p = 101, c = 3") {
  auto g = oriented_graph(make_params(101, 3), 2);
  CHECK(g.nodes.size() == 20);
  CHECK(g.certified);
  CHECK(g.symmetric);
  // Conjugation is an involution and a graph automorphism.
  std::multiset<std::pair<int, int>> E, Ec;
  for (auto [u, v] : g.edges()) {
    E.insert({u, v});
    int a = g.nodes[u].conj, b = g.nodes[v].conj;
    Ec.insert({std::min(a, b), std::max(a, b)});
  }
  CHECK(E == Ec);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    CHECK(g.nodes[g.nodes[v].conj].conj == static_cast<int>(v));
    CHECK(g.pairs[g.nodes[g.nodes[v].conj].pair].j == g.pairs[g.nodes[v].pair].j.frob());
    // Two horizontal directions on the surface, one vertical edge up from the floor.
    CHECK(g.out[v].size() == (g.nodes[v].surface ? 3u : 1u));
  }
  CHECK(to_dot(g).find("E1p") != std::string::npos);
  CHECK_THROWS_AS(oriented_graph(make_params(101, 3), 3), Error);
}
