// One line per acceptance criterion; exit status is nonzero if any line fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "eichler/classpoly.hpp"
#include "eichler/correspond.hpp"
#include "eichler/ec.hpp"
#include "eichler/modpoly.hpp"
#include "eichler/quat.hpp"
#include "eichler/verify.hpp"

using namespace eichler;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2026;
constexpr int kSampleSize = 50;
constexpr int kPropertyCases = 500;
constexpr i64 kMaxP = 300;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = s <= limit_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d %s  %-34s %8.2fs (limit %.0fs)  %s%s\n", n, pass ? "PASS" : "FAIL", title.c_str(), s,
              limit_s, o.detail.c_str(), in_time ? "" : " [over time limit]");
  std::fflush(stdout);
}

std::vector<i64> primes_upto(i64 n) {
  std::vector<i64> out;
  for (i64 k = 2; k <= n; ++k)
    if (is_prime(k)) out.push_back(k);
  return out;
}

// Every valid (p, c) with p <= 300 and c prime.
std::vector<std::pair<i64, i64>> sweep_pairs() {
  std::vector<std::pair<i64, i64>> out;
  for (i64 p : primes_upto(kMaxP))
    for (i64 c : primes_upto(p))
      if (!params_problem(p, c, Variant::Lambda)) out.emplace_back(p, c);
  return out;
}

struct Sample {
  PrimeParams params;
  i64 q, r;
};

std::vector<Sample> draw_sample() {
  std::mt19937_64 rng(kSeed);
  auto pairs = sweep_pairs();
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < kSampleSize) {
    auto [p, c] = pairs[rng() % pairs.size()];
    auto params = make_params(p, c);
    auto qs = find_q(params, 5000);
    if (qs.empty()) continue;
    i64 q = qs[rng() % qs.size()];
    i64 r = *sqrt_mod_prime(mod(-params.cp(), q), q);
    if (rng() & 1) r = q - r;
    out.push_back({params, q, r});
  }
  return out;
}

// x^2 + a y^2 = m for some integers, with no coprimality condition.
bool represents_any(i64 a, i64 m) {
  for (i64 y = 0; a * y * y <= m; ++y)
    if (is_square(m - a * y * y)) return true;
  return false;
}

struct SweepTable {
  PrimeParams params;
  std::vector<CorrespondenceRow> rows;
};

std::vector<SweepTable> sweep_tables;

// First few notes, then a count of the rest.
std::string summarize(const std::vector<std::string>& notes, std::size_t keep = 6) {
  std::string out;
  for (std::size_t i = 0; i < notes.size() && i < keep; ++i) out += "; " + notes[i];
  if (notes.size() > keep) out += "; ... " + std::to_string(notes.size() - keep) + " more";
  return out;
}

std::string pair_str(const PrimeParams& pr) {
  return "(p=" + std::to_string(pr.p) + ",c=" + std::to_string(pr.c) + "," + variant_name(pr.variant) + ")";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--help") {
    std::printf("usage: acceptance\n");
    return 0;
  }

  criterion(1, "p=101, c=3 correspondence table", 10, [] {
    Check ch = check_reference_table();
    return Outcome{ch.pass, ch.detail};
  });

  criterion(2, "Hilbert factorizations mod 101", 30, [] {
    Check ch = check_hilbert_factorizations();
    return Outcome{ch.pass, ch.detail};
  });

  const auto sample = draw_sample();
  criterion(3, "Eichler orders: is_order, disc", 60, [&] {
    int orders = 0;
    std::vector<std::string> bad;
    for (const auto& s : sample) {
      Check ch = check_orders(s.params, s.q, s.r);
      orders += lambda_prime_applies(s.params.p, s.params.c) ? 2 : 1;
      if (!ch.pass) bad.push_back(pair_str(s.params) + " q=" + std::to_string(s.q) + ": " + ch.detail);
    }
    std::ostringstream os;
    os << sample.size() << " sampled (p,c,q,r), " << orders << " orders";
    os << summarize(bad);
    return Outcome{bad.empty(), os.str()};
  });

  criterion(4, "successive minima vs reduced form", 300, [&] {
    std::vector<std::string> bad;
    for (const auto& s : sample) {
      Check ch = check_minima(s.params, s.q, s.r);
      if (!ch.pass) bad.push_back(ch.detail);
    }
    std::ostringstream os;
    os << sample.size() << " sampled (p,c,q,r)";
    os << summarize(bad);
    return Outcome{bad.empty(), os.str()};
  });

  const auto pairs = sweep_pairs();
  criterion(5, "F_p dichotomy over the sweep", 600, [&] {
    int rows = 0, structure = 0, primitive_fail = 0, any_fail = 0;
    std::vector<std::string> notes;
    for (auto [p, c] : pairs) {
      for (Variant v : {Variant::LambdaPrime, Variant::Lambda}) {
        if (params_problem(p, c, v)) continue;
        auto params = make_params(p, c, v);
        auto qs = find_q(params, 100000);
        if (qs.empty()) {
          ++structure;
          notes.push_back(pair_str(params) + " no q");
          continue;
        }
        sweep_tables.push_back({params, correspondence_table(params, qs.front())});
        const i64 m = v == Variant::LambdaPrime ? c : 4 * c;
        for (const auto& row : sweep_tables.back().rows) {
          ++rows;
          bool linear = row.gcd_poly.degree() == 1 && row.j_values.size() == 1 && row.j_values[0].in_Fp();
          bool pair = row.gcd_poly.degree() == 2 && row.j_values.size() == 2 &&
                      row.j_values[1] == row.j_values[0].frob() && !row.j_values[0].in_Fp();
          if (row.bad_disc || row.theorem_violation || !(linear || pair)) {
            ++structure;
            notes.push_back(pair_str(params) + " " + row.form_str() + " gcd " + row.gcd_poly.str());
          }
          if (row.in_Fp != !represent(row.form.a, m).empty()) {
            ++primitive_fail;
            notes.push_back(pair_str(params) + " " + row.form_str() + " in_Fp=" + (row.in_Fp ? "yes" : "no") +
                            " but coprime x^2+" + std::to_string(row.form.a) + "y^2=" + std::to_string(m) +
                            (represent(row.form.a, m).empty() ? " has no solution" : " is solvable"));
          }
          if (row.in_Fp != represents_any(row.form.a, m)) ++any_fail;
        }
      }
    }
    std::ostringstream os;
    os << pairs.size() << " (p,c), " << rows << " rows; gcd structure failures " << structure
       << "; dichotomy with gcd(x,y)=1: " << primitive_fail << " failures; without coprimality: " << any_fail
       << " failures" << summarize(notes);
    return Outcome{structure == 0 && primitive_fail == 0, os.str()};
  });

  criterion(6, "v_p(J(D1,D2)) = 2", 600, [&] {
    int checked = 0;
    std::vector<std::string> bad;
    for (const auto& t : sweep_tables) {
      const bool primed = t.params.variant == Variant::LambdaPrime;
      for (const auto& row : t.rows) {
        if (row.ambiguous() || row.form.a <= (primed ? 1 : 4) || row.bad_disc) continue;
        ++checked;
        int vp = resultant_vp(row.D1, row.D2, t.params.p);
        if (vp != 2) bad.push_back(pair_str(t.params) + " " + row.form_str() + " v_p=" + std::to_string(vp));
      }
    }
    std::ostringstream os;
    os << checked << " rows of order > 2 (tables reused from criterion 5)";
    os << summarize(bad);
    return Outcome{checked > 0 && bad.empty(), os.str()};
  });

  criterion(7, "class counts, fibers, ambiguous tables", 600, [&] {
    int counts = 0, fibers = 0, tables = 0;
    std::set<std::string> rows_seen;
    std::vector<std::string> bad;
    for (const auto& t : sweep_tables) {
      auto cr = count_check(t.params);
      ++counts;
      if (!cr.ok())
        bad.push_back(pair_str(t.params) + " classes " + std::to_string(cr.classes) + " vs h/4+eta/2 with h=" +
                      std::to_string(cr.h) + ", eta=" + std::to_string(cr.eta));
      i64 sum = 0;
      for (const auto& row : t.rows) sum += fiber_size(row);
      ++fibers;
      if (2 * sum != cr.h) bad.push_back(pair_str(t.params) + " fiber sum " + std::to_string(sum));
      auto tr = table_check(t.params);
      if (tr.applies) {
        ++tables;
        std::string key = std::string(variant_name(t.params.variant)) + " lambda=";
        for (int x : tr.expected.lambda) key += x > 0 ? "+" : "-";
        key += t.params.c == 2 ? " c=2" : "";
        rows_seen.insert(key);
        if (!tr.ok()) bad.push_back(pair_str(t.params) + " eta " + std::to_string(tr.observed.eta) + " expected " +
                                    std::to_string(tr.expected.eta));
      } else {
        bad.push_back(pair_str(t.params) + " has no table row");
      }
    }
    std::ostringstream os;
    os << counts << " class counts, " << fibers << " fiber sums, " << tables << " table checks over "
       << rows_seen.size() << " distinct table rows";
    os << summarize(bad);
    return Outcome{bad.empty(), os.str()};
  });

  criterion(8, "p=101 2-isogeny graph, Phi_3 counts", 60, [] {
    Check g = check_reference_graph();
    Check t = check_three_isogeny_counts();
    return Outcome{g.pass && t.pass, g.detail + "; " + t.detail};
  });

  criterion(9, "isogeny action and vertical orders", 60, [] {
    auto r = isogeny_action_check(make_params(101, 3), 2);
    std::ostringstream os;
    os << r.computed.size() << " classes, form graph " << (r.isomorphic ? "isomorphic" : "NOT isomorphic")
       << " to the Velu graph";
    for (const auto& v : r.vertical)
      os << "; q=" << v.q << " index " << v.index_in_O << "/" << v.index_in_Oprime << " disc " << v.disc.get_str()
         << (v.equals_otilde ? " = O~" : " != O~");
    os << (r.q_preserved ? "; q preserved" : "; q changed");
    return Outcome{r.ok() && !r.vertical.empty(), os.str()};
  });

  criterion(10, "property suites", 600, [] {
    std::mt19937_64 rng(kSeed);
    std::vector<std::string> bad;
    std::vector<i64> discs;
    for (i64 D = -3; D >= -5000; --D)
      if (mod(D, 4) <= 1) discs.push_back(D);

    // Class group axioms.
    int ok = 0;
    for (int t = 0; t < kPropertyCases; ++t) {
      i64 D = discs[rng() % discs.size()];
      const auto& G = class_group(D);
      const auto& f = G[rng() % G.size()];
      const auto& g = G[rng() % G.size()];
      const auto& h = G[rng() % G.size()];
      bool good = compose(compose(f, g), h) == compose(f, compose(g, h)) && compose(f, g) == compose(g, f) &&
                  compose(f, identity_form(D)) == f && compose(f, inverse(f)) == identity_form(D);
      ok += good;
      if (!good) bad.push_back("group law at D=" + std::to_string(D));
    }
    std::string detail = "group axioms " + std::to_string(ok) + "/" + std::to_string(kPropertyCases);

    // Genus equidistribution and ambiguous classes.
    ok = 0;
    for (int t = 0; t < kPropertyCases; ++t) {
      i64 D = discs[rng() % discs.size()];
      const auto& G = class_group(D);
      const std::size_t mu = assigned_characters(D).size();
      std::map<std::vector<int>, int> genera;
      int amb = 0;
      for (const auto& f : G) {
        ++genera[genus_of_form(f)];
        amb += compose(f, f) == identity_form(D);
      }
      const std::size_t want = std::size_t{1} << (mu - 1);
      bool good = genera.size() == want && static_cast<std::size_t>(amb) == want;
      for (const auto& [k, n] : genera) good = good && static_cast<std::size_t>(n) * want == G.size();
      ok += good;
      if (!good) bad.push_back("genera at D=" + std::to_string(D));
    }
    detail += ", genus equidistribution " + std::to_string(ok) + "/" + std::to_string(kPropertyCases);

    // Nrd multiplicativity.
    ok = 0;
    for (int t = 0; t < kPropertyCases; ++t) {
      QuatAlgebra A{static_cast<i64>(3 + rng() % 2000), static_cast<i64>(3 + rng() % 2000)};
      auto r = [&] { return mpq_class(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 12)); };
      auto x = QuatElement::make(A, r(), r(), r(), r()), y = QuatElement::make(A, r(), r(), r(), r());
      bool good = nrd(x * y) == nrd(x) * nrd(y);
      ok += good;
      if (!good) bad.push_back("Nrd multiplicativity");
    }
    detail += ", Nrd multiplicativity " + std::to_string(ok) + "/" + std::to_string(kPropertyCases);

    // Division polynomial roots against point arithmetic over F_{p^2}.
    ok = 0;
    const i64 small[] = {7, 11, 13};
    for (int t = 0; t < kPropertyCases; ++t) {
      i64 p = small[rng() % 3];
      const FieldCtx* K = fp2_ctx(p);
      Fq a4(K, rng() % p, rng() % p), a6(K, rng() % p, rng() % p);
      if ((a4 * a4 * a4 * 4 + a6 * a6 * 27).is_zero()) {
        --t;
        continue;
      }
      Curve E = Curve::make(a4, a6);
      int n = 2 + static_cast<int>(rng() % 5);
      std::set<Fq> torsion_x, root_x;
      for (i64 v = 0; v < p; ++v)
        for (i64 u = 0; u < p; ++u) {
          Fq x(K, u, v), y;
          if (E.rhs(x).sqrt(y) && mul(E, Point::affine(x, y), n).inf) torsion_x.insert(x);
        }
      for (const auto& x : distinct_roots(division_poly(E, n), true))
        if (E.rhs(x).is_square()) root_x.insert(x);
      bool good = torsion_x == root_x;
      ok += good;
      if (!good) bad.push_back("psi_" + std::to_string(n) + " over F_" + std::to_string(p) + "^2");
    }
    detail += ", psi_n roots " + std::to_string(ok) + "/" + std::to_string(kPropertyCases);

    // Modular polynomial symmetry, plus vanishing on Velu pairs.
    ok = 0;
    const FieldCtx* K = fp2_ctx(101);
    for (int t = 0; t < kPropertyCases; ++t) {
      int ell = 2 + t % 2;
      Fq x(K, rng() % 101, rng() % 101), y(K, rng() % 101, rng() % 101);
      bool good = phi_eval(phi_poly(ell), x, y) == phi_eval(phi_poly(ell), y, x);
      Curve E = from_j(x);
      auto ks = order_c_kernels(E, ell);
      if (!ks.empty()) good = good && phi_eval(phi_poly(ell), x, codomain_j(ks[rng() % ks.size()])).is_zero();
      ok += good;
      if (!good) bad.push_back("Phi_" + std::to_string(ell) + " symmetry");
    }
    detail += ", Phi symmetry " + std::to_string(ok) + "/" + std::to_string(kPropertyCases);
    detail += ", seed " + std::to_string(kSeed);
    detail += summarize(bad);
    return Outcome{bad.empty(), detail};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
