#include <doctest.h>

#include <numeric>
#include <random>

#include "eichler/correspond.hpp"
#include "eichler/ec.hpp"
#include "eichler/graph_iso.hpp"
#include "eichler/verify.hpp"

using namespace eichler;

namespace {

const CorrespondenceRow& row_for(const std::vector<CorrespondenceRow>& rows, const BQForm& f) {
  for (const auto& r : rows)
    if (r.form == f) return r;
  FAIL("no row for " << f.str());
  return rows.front();
}

std::vector<CorrespondenceRow> table(i64 p, i64 c, Variant v) {
  auto params = make_params(p, c, v);
  return correspondence_table(params, find_q(params, 1000).front());
}

}  // namespace

TEST_CASE("rows for p = 101, c = 3") {
  auto pri = table(101, 3, Variant::LambdaPrime);
  auto lam = table(101, 3, Variant::Lambda);
  CHECK(pri.size() == 3);
  CHECK(lam.size() == 3);
  const FieldCtx* K = fp2_ctx(101);

  const auto& r1 = row_for(pri, {3, 3, 26});
  CHECK(r1.j_values == std::vector<Fq>{Fq(K, 66)});
  CHECK(r1.in_Fp);
  CHECK(r1.rep_solution == std::make_pair<i64, i64>(0, 1));
  CHECK(fiber_size(r1) == 1);
  CHECK(r1.order_label == "O'_3(1619,1215)");

  const auto& r2 = row_for(lam, {32, 12, 39});
  CHECK(r2.j_values == std::vector<Fq>{Fq(K, 37, 10), Fq(K, 37, 91)});
  CHECK_FALSE(r2.in_Fp);
  CHECK_FALSE(r2.rep_solution.has_value());
  CHECK(r2.pm);
  CHECK(r2.form_str() == "(32,±12,39)");
  CHECK(fiber_size(r2) == 2);

  const auto& r3 = row_for(lam, {3, 0, 404});
  CHECK(r3.j_values == std::vector<Fq>{Fq(K, 0)});
  CHECK(r3.D1 == -3);

  const auto& r4 = row_for(lam, {11, 6, 111});
  CHECK(r4.j_values == std::vector<Fq>{Fq(K, 57)});
  CHECK(fiber_size(r4) == 2);
  CHECK(r4.order_label == "O_3(11,7)");

  for (const auto* rows : {&pri, &lam})
    for (const auto& r : *rows) {
      CHECK_FALSE(r.theorem_violation);
      CHECK(r.gcd_poly.degree() == static_cast<int>(r.j_values.size()));
      for (const auto& j : r.j_values) CHECK(is_supersingular(from_j(j)));
    }
}

TEST_CASE("class counts and tables") {
  auto c1 = count_check(make_params(101, 3, Variant::LambdaPrime));
  CHECK(c1.h == 10);
  CHECK(c1.classes == 3);
  CHECK(c1.ok());
  auto c2 = count_check(make_params(101, 3));
  CHECK(c2.classes == 3);
  CHECK(c2.ok());
  for (auto [p, c] : {std::pair<i64, i64>{103, 2}, {107, 2}, {109, 3}, {131, 3}, {199, 7}, {283, 5}, {239, 13}}) {
    for (Variant v : {Variant::Lambda, Variant::LambdaPrime}) {
      if (params_problem(p, c, v)) continue;
      auto params = make_params(p, c, v);
      CHECK(count_check(params).ok());
      auto t = table_check(params);
      CHECK(t.applies);
      CHECK(t.ok());
      auto rows = correspondence_table(params, find_q(params, 2000).front());
      int fibers = 0;
      for (const auto& r : rows) fibers += fiber_size(r);
      CHECK(2 * fibers == class_number(v == Variant::Lambda ? -4 * c * p : -c * p));
    }
  }
}

TEST_CASE("order-two forms") {
  auto rep = order_two_check(make_params(101, 3));
  CHECK(rep.ok());
  bool primed_other = false;
  for (const auto& cs : rep.cases) primed_other = primed_other || cs.shape == OrderTwoShape::PrimedOther;
  CHECK(primed_other);
  // p = 3, c = 1 mod 4: the form (1,1,(1+cp)/4) sits at j = 1728.
  auto rep2 = order_two_check(make_params(283, 5));
  CHECK(rep2.ok());
}

TEST_CASE("isogeny action") {
  auto rep = isogeny_action_check(make_params(101, 3), 2);
  CHECK(rep.isomorphic);
  CHECK(rep.vertical_applies);
  CHECK_FALSE(rep.vertical.empty());
  for (const auto& v : rep.vertical) {
    CHECK(v.index_in_O == 2);
    CHECK(v.index_in_Oprime == 2);
    CHECK(v.disc == 4 * 91809);
    CHECK(v.equals_otilde);
  }
  CHECK(rep.q_preserved);
  CHECK(rep.ok());
  CHECK(isogeny_action_check(make_params(109, 3), smallest_split_prime(make_params(109, 3))).ok());
}

TEST_CASE("graph isomorphism search") {
  CHECK(find_isomorphism(reference_two_isogeny_graph(), as_labeled(oriented_graph(make_params(101, 3), 2))).has_value());
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    const int n = 12;
    LabeledGraph A(n);
    for (int i = 0; i < n; ++i) A.labels[i] = std::to_string(rng() % 3);
    for (int e = 0; e < 18; ++e) A.add_edge(rng() % n, rng() % n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LabeledGraph B(n);
    for (int i = 0; i < n; ++i) B.labels[perm[i]] = A.labels[i];
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) B.adj[perm[i]][perm[k]] = A.adj[i][k];
    auto iso = find_isomorphism(A, B);
    REQUIRE(iso.has_value());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) CHECK(B.adj[(*iso)[i]][(*iso)[k]] == A.adj[i][k]);
    // One extra edge breaks it.
    B.add_edge(0, 1);
    CHECK_FALSE(find_isomorphism(A, B).has_value());
  }
}
