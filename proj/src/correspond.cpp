#include "eichler/correspond.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eichler/classpoly.hpp"
#include "eichler/error.hpp"
#include "eichler/modpoly.hpp"
#include "eichler/quat.hpp"

namespace eichler {

namespace {

bool is_disc(i64 D) { return D < 0 && (mod(D, 4) == 0 || mod(D, 4) == 1); }

std::optional<i64> find_represented_prime(const BQForm& f, const PrimeParams& params) {
  for (i64 bound : {1000L, 20000L, 400000L}) {
    if (auto q = represented_prime(f, params, bound)) return q;
  }
  return std::nullopt;
}

PrimeParams with_variant(const PrimeParams& params, Variant v) {
  PrimeParams out = params;
  out.variant = v;
  return out;
}

// r for O_c(q, r) or r' for O'_c(q, r') whose order reduces to f or f^-1.
// Prefers the root that lifts to 4q (odd r) so both levels share it.
std::optional<i64> eichler_r(const PrimeParams& params, i64 q, const BQForm& f) {
  const i64 cp = params.cp();
  auto r0 = sqrt_mod_prime(mod(-cp, q), q);
  if (!r0) return std::nullopt;
  std::vector<i64> cands;
  if (params.variant == Variant::LambdaPrime) {
    i64 r = lift_sqrt_mod_4q(*r0, q, cp);
    cands = {r, mod(-r, 2 * q)};
  } else if (mod(cp, 4) == 3) {
    i64 r = lift_sqrt_mod_4q(*r0, q, cp);
    cands = {r, q - r};
  } else {
    cands = {*r0, q - *r0};
  }
  BQForm finv = reduce(inverse(f));
  std::optional<i64> fallback;
  for (i64 r : cands) {
    BQForm g = params.variant == Variant::LambdaPrime ? reduce(BQForm{q, r, (r * r + cp) / (4 * q)})
                                                      : reduce(BQForm{q, 4 * r, (4 * r * r + 4 * cp) / q});
    if (g == f && params.variant == Variant::Lambda) return r;
    if ((g == f || g == finv) && !fallback) fallback = r;
  }
  return fallback;
}

std::string jset_label(const std::vector<Fq>& js) {
  std::set<std::string> s;
  for (const auto& j : js) {
    s.insert(j.str());
    s.insert(j.frob().str());
  }
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return out;
}

}  // namespace

std::string CorrespondenceRow::form_str() const {
  std::string b = pm ? "±" + std::to_string(form.b) : std::to_string(form.b);
  return "(" + std::to_string(form.a) + "," + b + "," + std::to_string(form.ap) + ")";
}

std::string CorrespondenceRow::j_str() const {
  std::string out;
  for (const auto& j : j_values) out += (out.empty() ? "" : ", ") + j.str();
  return out;
}

std::vector<CorrespondenceRow> correspondence_table(const PrimeParams& params, i64 q) {
  const i64 p = params.p, c = params.c;
  const bool primed = params.variant == Variant::LambdaPrime;
  std::vector<CorrespondenceRow> rows;
  std::set<std::tuple<i64, i64, i64>> seen;
  for (const auto& f0 : genus_class(params, q)) {
    BQForm finv = reduce(inverse(f0));
    BQForm f = f0.b >= 0 ? f0 : finv;
    if (!seen.insert({f.a, f.b, f.ap}).second) continue;
    CorrespondenceRow row;
    row.form = f;
    row.pm = !(finv == f);
    row.variant = params.variant;
    row.order = form_order(f);
    row.D1 = primed ? -4 * f.a : -f.a;
    row.D2 = primed ? -4 * f.ap : -f.ap;

    if (auto qq = find_represented_prime(f, params)) {
      if (auto r = eichler_r(params, *qq, f)) {
        row.q = *qq;
        row.r = *r;
        row.order_label = std::string(primed ? "O'_" : "O_") + std::to_string(c) + "(" + std::to_string(row.q) + "," +
                          std::to_string(row.r) + ")";
      }
    }
    auto reps = represent(f.a, primed ? c : 4 * c);
    if (!reps.empty()) row.rep_solution = reps.front();

    if (!is_disc(row.D1) || !is_disc(row.D2)) {
      row.bad_disc = true;
      row.note = "-a or -a' is not a discriminant";
      rows.push_back(row);
      continue;
    }
    row.gcd_poly = poly_gcd(hilbert_mod(row.D1, p), hilbert_mod(row.D2, p));
    row.j_values = distinct_roots(row.gcd_poly, true);
    std::sort(row.j_values.begin(), row.j_values.end());
    const int deg = row.gcd_poly.degree();
    if (deg == 1) {
      row.in_Fp = true;
    } else if (deg == 2 && row.j_values.size() == 2 && !row.j_values[0].in_Fp() &&
               row.j_values[1] == row.j_values[0].frob()) {
      row.in_Fp = false;
    } else {
      row.theorem_violation = true;
      row.note = "gcd " + row.gcd_poly.str("X") + " is neither linear nor an irreducible quadratic over F_p";
    }
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const CorrespondenceRow& x, const CorrespondenceRow& y) { return table_less(x.form, y.form); });
  return rows;
}

int fiber_size(const CorrespondenceRow& row) { return (row.in_Fp && row.ambiguous()) ? 1 : 2; }

CountReport count_check(const PrimeParams& params) {
  CountReport rep;
  rep.variant = params.variant;
  auto qs = find_q(params, 100000);
  if (qs.empty()) throw Error(Errc::BadQ, "no prime q below 100000");
  rep.q = qs.front();
  auto genus = genus_class(params, rep.q);
  rep.genus_size = static_cast<i64>(genus.size());
  rep.eta = ambiguous_in_genus(params, rep.q).count;
  std::set<std::tuple<i64, i64, i64>> classes;
  for (const auto& f : genus) {
    BQForm g = f.b >= 0 ? f : reduce(inverse(f));
    classes.insert({g.a, g.b, g.ap});
  }
  rep.classes = static_cast<i64>(classes.size());
  rep.h = class_number(params.variant == Variant::Lambda ? -4 * params.cp() : -params.cp());
  rep.left4 = 2 * (rep.genus_size + rep.eta);
  rep.right4 = rep.h + 2 * rep.eta;
  return rep;
}

std::optional<TableEntry> expected_table_entry(const PrimeParams& params) {
  const i64 p = params.p, c = params.c, cp = params.cp();
  const int p4 = static_cast<int>(mod(p, 4));
  const int cop = kronecker(c, p);
  TableEntry e;
  if (params.variant == Variant::LambdaPrime) {
    if (mod(cp, 4) != 3 || c == 2) return std::nullopt;
    if (p4 == 3) {
      e.lambda = {1, 1};
      e.forms.push_back({1, 1, (1 + cp) / 4});
      if (cop == 1) e.forms.push_back({c, c, (c + p) / 4});
    } else {
      e.lambda = {-1, -1};
      if (cop == -1) e.forms.push_back({c, c, (c + p) / 4});
    }
  } else if (c == 2) {
    if (p4 == 3) {
      e.lambda = {1, 1, -1};
      e.forms.push_back({4, 4, 1 + 2 * p});
      if (cop == 1) e.forms.push_back({8, 0, p});
    } else {
      e.lambda = {-1, 1, -1};
      if (cop == -1) e.forms.push_back({8, 8, 2 + p});
    }
  } else {
    const int c4 = static_cast<int>(mod(c, 4));
    if (p4 == 3 && c4 == 1) {
      e.lambda = {1, 1, -1};
      e.forms.push_back({4, 0, cp});
      if (cop == 1) e.forms.push_back({4 * c, 0, p});
    } else if (p4 == 1 && c4 == 3) {
      e.lambda = {-1, -1, -1};
      if (cop == -1) e.forms.push_back({c, 0, 4 * p});
    } else if (p4 == 3 && c4 == 3) {
      e.lambda = {1, -1, -1};
      if (cop == 1) {
        e.forms.push_back({c, 0, 4 * p});
        e.forms.push_back({4 * c, 0, p});
      }
    } else {
      e.lambda = {-1, 1, -1};
    }
  }
  for (auto& f : e.forms) f = reduce(f);
  std::sort(e.forms.begin(), e.forms.end(), table_less);
  e.eta = static_cast<int>(e.forms.size());
  return e;
}

bool TableReport::ok() const {
  return !applies || (expected.lambda == observed.lambda && expected.eta == observed.eta &&
                      expected.forms == observed.forms);
}

TableReport table_check(const PrimeParams& params) {
  TableReport rep;
  auto e = expected_table_entry(params);
  if (!e) return rep;
  rep.applies = true;
  rep.expected = *e;
  auto qs = find_q(params, 100000);
  if (qs.empty()) throw Error(Errc::BadQ, "no prime q below 100000");
  rep.observed.lambda = lambda_vector(params, qs.front());
  auto amb = ambiguous_in_genus(params, qs.front());
  rep.observed.eta = amb.count;
  rep.observed.forms = amb.forms;
  std::sort(rep.observed.forms.begin(), rep.observed.forms.end(), table_less);
  return rep;
}

const char* shape_name(OrderTwoShape s) {
  switch (s) {
    case OrderTwoShape::PrimedPrincipal: return "(1,1,(1+cp)/4)";
    case OrderTwoShape::PrimedOther: return "primed";
    case OrderTwoShape::FourCp: return "(4,0,cp)";
    case OrderTwoShape::FourCP: return "(4c,0,p)";
    case OrderTwoShape::CFourP: return "(c,0,4p)";
    case OrderTwoShape::Other: break;
  }
  return "other";
}

bool OrderTwoReport::ok() const {
  return std::all_of(cases.begin(), cases.end(), [](const OrderTwoCase& c) { return c.ok(); });
}

OrderTwoReport order_two_check(const PrimeParams& base) {
  OrderTwoReport rep;
  const i64 p = base.p, c = base.c, cp = base.cp();
  const Fq j1728(fp2_ctx(p), 1728 % p);
  for (Variant v : {Variant::LambdaPrime, Variant::Lambda}) {
    if (v == Variant::LambdaPrime && !lambda_prime_applies(p, c)) continue;
    PrimeParams params = with_variant(base, v);
    auto qs = find_q(params, 100000);
    if (qs.empty()) continue;
    for (const auto& f : ambiguous_in_genus(params, qs.front()).forms) {
      OrderTwoCase ac;
      ac.variant = v;
      ac.form = f;
      const bool primed = v == Variant::LambdaPrime;
      ac.D1 = primed ? -4 * f.a : -f.a;
      ac.D2 = primed ? -4 * f.ap : -f.ap;
      auto is = [&](BQForm g) { return g.primitive() && reduce(g) == f; };
      using S = OrderTwoShape;
      if (primed && is({1, 1, (1 + cp) / 4})) ac.shape = S::PrimedPrincipal;
      else if (primed) ac.shape = S::PrimedOther;
      else if (is({4, 0, cp})) ac.shape = S::FourCp;
      else if (is({4 * c, 0, p})) ac.shape = S::FourCP;
      else if (is({c, 0, 4 * p})) ac.shape = S::CFourP;
      else ac.shape = S::Other;
      if (!is_disc(ac.D1) || !is_disc(ac.D2)) {
        ac.single_fp_root = false;
        ac.detail = "not a discriminant";
        rep.cases.push_back(ac);
        continue;
      }
      Poly g = poly_gcd(hilbert_mod(ac.D1, p), hilbert_mod(ac.D2, p));
      ac.gcd = g.str("X");
      ac.single_fp_root = g.degree() == 1;
      Fq j = ac.single_fp_root ? distinct_roots(g, false).front() : j1728;
      if (ac.shape == S::PrimedPrincipal || ac.shape == S::FourCp) {
        ac.extra_ok = ac.single_fp_root && j == j1728;
        ac.detail = "root " + j.str() + ", expected 1728 mod p";
      } else if (ac.shape == S::PrimedOther && 4 * c < p && kronecker(mod(-p, c), c) == 1) {
        auto fp_roots = distinct_roots(hilbert_mod(-4 * c, p), false);
        ac.detail = "H_{-4c} has " + std::to_string(fp_roots.size()) + " F_p roots";
        if (mod(p, 4) == 1 && mod(c, 4) == 3) {
          ac.extra_ok = fp_roots.size() == 1;
        } else if (mod(p, 4) == 3 && mod(c, 4) == 1) {
          ac.extra_ok = fp_roots.size() == 2 && phi_eval(phi_poly(2), fp_roots[0], fp_roots[1]).is_zero();
          ac.detail += ac.extra_ok ? ", joined by a 2-isogeny" : ", no 2-isogeny between them";
        }
      }
      rep.cases.push_back(ac);
    }
  }
  return rep;
}

BQForm vertical_up(const PrimeParams& params, const BQForm& F, i64* q_used) {
  const i64 cp = params.cp();
  if (mod(cp, 4) != 3) throw Error(Errc::BadParams, "vertical isogenies need cp = 3 (mod 4)");
  PrimeParams lam = with_variant(params, Variant::Lambda);
  auto q = find_represented_prime(F, lam);
  if (!q) throw Error(Errc::BadQ, "no represented prime for " + F.str());
  auto r0 = sqrt_mod_prime(mod(-cp, *q), *q);
  for (i64 r : {*r0, *q - *r0}) {
    if (!(reduce(BQForm{*q, 4 * r, (4 * r * r + 4 * cp) / *q}) == F)) continue;
    if (r % 2 == 0) r += *q;
    if (q_used) *q_used = *q;
    return reduce(BQForm{*q, r, (r * r + cp) / (4 * *q)});
  }
  throw Error(Errc::BadParams, "no r reproduces " + F.str());
}

bool IsogenyActionReport::ok() const {
  return isomorphic && q_preserved &&
         std::all_of(vertical.begin(), vertical.end(), [](const Vertical& v) { return v.ok; });
}

IsogenyActionReport isogeny_action_check(const PrimeParams& base, int ell) {
  IsogenyActionReport rep;
  rep.ell = ell;
  const i64 cp = base.cp();
  const bool two_levels = mod(cp, 4) == 3 && base.c != 2;
  rep.vertical_applies = two_levels && ell == 2;

  struct Level {
    PrimeParams params;
    std::string tag;
    std::vector<BQForm> forms;
    std::map<std::tuple<i64, i64, i64>, std::string> jset;
    std::vector<CorrespondenceRow> rows;
  };
  std::vector<Level> levels;
  for (Variant v : {Variant::LambdaPrime, Variant::Lambda}) {
    if (v == Variant::LambdaPrime && !two_levels) continue;
    Level L;
    L.params = with_variant(base, v);
    L.tag = v == Variant::LambdaPrime ? "S" : "F";
    auto qs = find_q(L.params, 100000);
    if (qs.empty()) throw Error(Errc::BadQ, "no prime q below 100000");
    L.forms = genus_class(L.params, qs.front());
    L.rows = correspondence_table(L.params, qs.front());
    for (const auto& row : L.rows) {
      std::string js = jset_label(row.j_values);
      L.jset[{row.form.a, row.form.b, row.form.ap}] = js;
      BQForm g = reduce(inverse(row.form));
      L.jset[{g.a, g.b, g.ap}] = js;
    }
    levels.push_back(std::move(L));
  }

  // Predicted graph on forms.
  std::map<std::pair<std::string, std::tuple<i64, i64, i64>>, int> vid;
  int n = 0;
  for (const auto& L : levels) n += static_cast<int>(L.forms.size());
  rep.predicted = LabeledGraph(n);
  int k = 0;
  for (const auto& L : levels)
    for (const auto& f : L.forms) {
      vid[{L.tag, {f.a, f.b, f.ap}}] = k;
      rep.predicted.labels[k] = L.tag + "|" + L.jset.at({f.a, f.b, f.ap});
      rep.predicted_names.push_back(L.tag + f.str());
      ++k;
    }
  auto id = [&](const std::string& tag, const BQForm& f) { return vid.at({tag, {f.a, f.b, f.ap}}); };
  for (const auto& L : levels) {
    if (L.tag == "F" && ell == 2 && two_levels) continue;
    BQForm g = prime_splitting_form(ell, L.params);
    // A ramified ell has a single prime above it, hence one horizontal isogeny.
    const i64 Dord = L.tag == "S" ? -cp : -4 * cp;
    const bool split = kronecker(Dord, ell) == 1;
    for (const auto& f : L.forms) {
      rep.predicted.add_edge(id(L.tag, f), id(L.tag, isogeny_action(f, g)));
      if (split) rep.predicted.add_edge(id(L.tag, f), id(L.tag, isogeny_action(f, inverse(g))));
    }
  }
  if (rep.vertical_applies) {
    const Level& S = levels[0];
    const Level& F = levels[1];
    for (const auto& f : F.forms) {
      i64 q = 0;
      BQForm up = vertical_up(base, f, &q);
      // Both directions of the vertical isogeny, as the computed graph stores them.
      rep.predicted.add_edge(id("F", f), id("S", up));
      rep.predicted.add_edge(id("S", up), id("F", f));
      bool hit = false;
      for (auto [x, y] : small_values(up, q)) hit = hit || up.eval(x, y) == q;
      rep.q_preserved = rep.q_preserved && hit;
    }
    for (const auto& row : S.rows) {
      if (row.q == 0) continue;
      IsogenyActionReport::Vertical v;
      v.q = row.q;
      v.r = row.r;
      PrimeParams lam = with_variant(base, Variant::Lambda);
      PrimeParams pri = with_variant(base, Variant::LambdaPrime);
      QuatOrder O = eichler_O(lam, row.q, row.r);
      QuatOrder Op = eichler_Oprime(pri, row.q, row.r);
      QuatOrder I = intersect(O, Op);
      v.disc = discriminant(I);
      v.index_in_O = index(I, O);
      v.index_in_Oprime = index(I, Op);
      v.equals_otilde = same_lattice(I, eichler_Otilde(lam, row.q, row.r));
      mpz_class c2p2 = mpz_class(base.c) * base.c * base.p * base.p;
      v.ok = v.disc == 4 * c2p2 && v.index_in_O == 2 && v.index_in_Oprime == 2 && v.equals_otilde;
      rep.vertical.push_back(v);
    }
  }

  // Computed graph modulo Galois conjugation.
  OrientedGraph g = oriented_graph(base, ell);
  rep.certified = g.certified;
  std::vector<int> orbit(g.nodes.size(), -1);
  std::vector<int> reps;
  for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u) {
    int m = std::min(u, g.nodes[u].conj);
    if (orbit[m] < 0) {
      orbit[m] = static_cast<int>(reps.size());
      reps.push_back(m);
    }
    orbit[u] = orbit[m];
  }
  rep.computed = LabeledGraph(static_cast<int>(reps.size()));
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    const auto& node = g.nodes[reps[i]];
    const auto& pr = g.pairs[node.pair];
    rep.computed.labels[i] = std::string(node.surface ? "S" : "F") + "|" + jset_label({pr.j});
    rep.computed_names.push_back(node.id + "/" + g.nodes[node.conj].id);
    for (int t : g.out[reps[i]]) rep.computed.add_edge(i, orbit[t]);
  }
  rep.isomorphic = find_isomorphism(rep.predicted, rep.computed).has_value();
  return rep;
}

}  // namespace eichler
