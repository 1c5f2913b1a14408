#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eichler/ff.hpp"
#include "eichler/graph_iso.hpp"
#include "eichler/numth.hpp"
#include "eichler/oriented.hpp"
#include "eichler/qform.hpp"

namespace eichler {

// One isomorphism class of orders: the form f (b >= 0 representative) and,
// when f != f^-1, its inverse, which the display shows as (a, ±b, a').
struct CorrespondenceRow {
  BQForm form;
  bool pm = false;
  Variant variant = Variant::Lambda;
  i64 order = 0;  // in the class group
  i64 q = 0;      // Eichler parameters, 0 when no represented prime was found
  i64 r = 0;
  std::string order_label;
  i64 D1 = 0, D2 = 0;
  bool bad_disc = false;  // -a or -a' is not a discriminant
  Poly gcd_poly;
  std::vector<Fq> j_values;
  bool in_Fp = false;
  std::optional<std::pair<i64, i64>> rep_solution;
  bool theorem_violation = false;  // degree-2 gcd split over F_p, or worse
  std::string note;

  bool ambiguous() const { return order <= 2; }
  std::string form_str() const;  // "(11,±6,111)"
  std::string j_str() const;     // "57" or "37+10*a, 37+91*a"
};

std::vector<CorrespondenceRow> correspondence_table(const PrimeParams& params, i64 q);
int fiber_size(const CorrespondenceRow& row);

struct CountReport {
  Variant variant = Variant::Lambda;
  i64 q = 0;
  i64 genus_size = 0;
  i64 eta = 0;
  i64 h = 0;  // h(-4cp) or h(-cp)
  i64 classes = 0;
  // Both sides of the class-count formula, times 4 to stay integral.
  i64 left4 = 0, right4 = 0;
  bool ok() const { return left4 == right4; }
};
CountReport count_check(const PrimeParams& params);

// Table rows for the ambiguous forms in a genus class.
struct TableEntry {
  std::vector<int> lambda;
  int eta = 0;
  std::vector<BQForm> forms;
};
// nullopt when the variant does not apply to (p, c).
std::optional<TableEntry> expected_table_entry(const PrimeParams& params);
struct TableReport {
  bool applies = false;
  TableEntry expected, observed;
  bool ok() const;
};
TableReport table_check(const PrimeParams& params);

// Reduced forms of order <= 2 in the genus, by shape.
enum class OrderTwoShape { PrimedPrincipal, PrimedOther, FourCp, FourCP, CFourP, Other };
const char* shape_name(OrderTwoShape s);

struct OrderTwoCase {
  OrderTwoShape shape = OrderTwoShape::Other;
  Variant variant = Variant::Lambda;
  BQForm form;
  i64 D1 = 0, D2 = 0;
  std::string gcd;
  bool single_fp_root = false;
  bool extra_ok = true;  // case-specific condition
  std::string detail;
  bool ok() const { return single_fp_root && extra_ok; }
};
struct OrderTwoReport {
  std::vector<OrderTwoCase> cases;
  bool ok() const;
};
OrderTwoReport order_two_check(const PrimeParams& params);

// Forms of both levels, predicted edges, and the Velu graph modulo conjugation.
struct IsogenyActionReport {
  int ell = 0;
  LabeledGraph predicted, computed;
  std::vector<std::string> predicted_names, computed_names;
  bool isomorphic = false;
  bool vertical_applies = false;
  struct Vertical {
    i64 q = 0, r = 0;
    mpz_class disc;
    mpz_class index_in_O, index_in_Oprime;
    bool equals_otilde = false;
    bool ok = false;
  };
  std::vector<Vertical> vertical;
  bool q_preserved = true;  // up(F) represents the prime used for F
  bool certified = false;
  bool ok() const;
};
IsogenyActionReport isogeny_action_check(const PrimeParams& params, int ell);

// Surface form above a floor form via the vertical 2-isogeny (cp = 3 mod 4).
BQForm vertical_up(const PrimeParams& params, const BQForm& F, i64* q_used = nullptr);

}  // namespace eichler
