#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eichler/correspond.hpp"
#include "eichler/graph_iso.hpp"
#include "eichler/oriented.hpp"

namespace eichler {

struct Check {
  std::string key;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Published data for p = 101, c = 3 (F_{101^2} = F_101(a), a^2 = -2).
struct ReferenceRow {
  std::string order;  // e.g. "O'_3(1619,1215)"
  Variant variant;
  BQForm form;  // b >= 0 representative
  std::vector<std::string> js;
};
const std::vector<ReferenceRow>& reference_rows();
// The published 2-isogeny diagram: E1..E10 then E1'..E10', labels are j.
LabeledGraph reference_two_isogeny_graph();
// The computed graph with j labels and the conjugation involution.
LabeledGraph as_labeled(const OrientedGraph& g);

struct IsogenyCountCase {
  Fq j1, j2;
  int expected;
};
std::vector<IsogenyCountCase> reference_three_isogeny_counts();

Check check_reference_table();
Check check_hilbert_factorizations();
Check check_reference_graph();
Check check_three_isogeny_counts();

// Level-c orders for (q, r) of both shapes that apply: is_order, disc c^2 p^2,
// and order_to_form landing in the right genus.
Check check_orders(const PrimeParams& params, i64 q, i64 r);
// First two embedded discriminants against the reduced form.
Check check_minima(const PrimeParams& params, i64 q, i64 r);

// Row-level audit of both genus classes for (p, c).
struct RowAudit {
  int rows = 0;
  int dichotomy_failures = 0;  // in_Fp differs from representability
  int structure_failures = 0;  // gcd not linear / conjugate pair, or bad discriminant
  int vp_checked = 0;
  int vp_failures = 0;
  int fiber_failures = 0;  // per variant: fiber sum vs h/2
  std::vector<std::string> notes;
  bool ok() const { return dichotomy_failures + structure_failures + vp_failures + fiber_failures == 0; }
};
RowAudit audit_rows(i64 p, i64 c);

// Smallest prime ell != c, p with (-cp/ell) = 1, or 0 if none below 50.
int smallest_split_prime(const PrimeParams& params);

// Orders are checked for three values of q: the smallest ones, or a seeded sample below 5000.
std::vector<Check> verify_paper(i64 p, i64 c, std::uint64_t seed = 0);

}  // namespace eichler
