#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "eichler/classpoly.hpp"
#include "eichler/correspond.hpp"
#include "eichler/error.hpp"
#include "eichler/modpoly.hpp"
#include "eichler/oriented.hpp"
#include "eichler/quat.hpp"
#include "eichler/serialize.hpp"
#include "eichler/verify.hpp"

using namespace eichler;

namespace {

enum class Output { Text, Json, Dot };

struct RunConfig {
  i64 p = 101;
  i64 c = 3;
  std::optional<i64> q, r;
  int ell = 2;
  std::optional<std::string> variant;
  bool prime_variant = false;
  Output output = Output::Text;
  long precision = 0;
  std::string out_path;
  std::uint64_t seed = 0;
  std::string phi3;
  std::optional<i64> d1, d2;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit 2 for misuse, 1 for a failed mathematical check.
bool is_usage_error(Errc e) {
  switch (e) {
    case Errc::BadParams:
    case Errc::NoLift:
    case Errc::NotPrimitive:
    case Errc::NotNegativeDisc:
    case Errc::DiscMismatch:
    case Errc::BadDisc:
    case Errc::NotCoprime:
    case Errc::BadQ:
    case Errc::NotSplit:
    case Errc::PTooLarge:
    case Errc::BadN:
    case Errc::UnsupportedEll:
    case Errc::Parse:
      return true;
    default:
      return false;
  }
}

Variant parse_variant(const std::string& s) {
  if (s == "lambda") return Variant::Lambda;
  if (s == "lambda-prime") return Variant::LambdaPrime;
  throw Usage("--variant must be lambda or lambda-prime");
}

PrimeParams params_for(const RunConfig& cfg, Variant v) {
  if (auto why = params_problem(cfg.p, cfg.c, v)) throw Usage(*why);
  return PrimeParams{cfg.p, cfg.c, v};
}

std::vector<Variant> variants_for(const RunConfig& cfg) {
  if (cfg.variant) return {parse_variant(*cfg.variant)};
  if (cfg.prime_variant) return {Variant::LambdaPrime};
  std::vector<Variant> vs;
  if (lambda_prime_applies(cfg.p, cfg.c) && cfg.c != 2) vs.push_back(Variant::LambdaPrime);
  vs.push_back(Variant::Lambda);
  return vs;
}

i64 pick_q(const RunConfig& cfg, const PrimeParams& params) {
  if (cfg.q) {
    if (!satisfies_eq1(params, *cfg.q)) throw Usage("q = " + std::to_string(*cfg.q) + " fails the congruence conditions");
    return *cfg.q;
  }
  auto qs = find_q(params, 100000);
  if (qs.empty()) throw Usage("no admissible q below 100000");
  return qs.front();
}

void emit(const RunConfig& cfg, const std::string& s) {
  if (cfg.out_path.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw Usage("cannot write " + cfg.out_path);
  f << s;
}

// setw counts bytes; the tables contain UTF-8 (the ± sign).
std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (unsigned char ch : s) cols += (ch & 0xC0) != 0x80;
  return s + std::string(cols < width ? width - cols : 1, ' ');
}

std::string lambda_str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string(v[i] > 0 ? "+1" : "-1");
  return s + ")";
}

int cmd_genus(const RunConfig& cfg) {
  std::ostringstream os;
  json all = json::array();
  for (Variant v : variants_for(cfg)) {
    auto params = params_for(cfg, v);
    GenusReport r;
    r.p = cfg.p;
    r.c = cfg.c;
    r.variant = v;
    r.q = pick_q(cfg, params);
    r.lambda = lambda_vector(params, r.q);
    r.forms = genus_class(params, r.q);
    r.ambiguous = ambiguous_in_genus(params, r.q).forms;
    if (cfg.output == Output::Json) {
      all.push_back(r);
      continue;
    }
    os << variant_name(v) << " genus of q=" << r.q << ", D=" << genus_disc(params) << ", Lambda=" << lambda_str(r.lambda)
       << ": " << r.forms.size() << " forms\n";
    for (const auto& f : r.forms) os << "  " << f.str() << (f.ambiguous() ? "  order <= 2" : "") << "\n";
    os << "  eta = " << r.ambiguous.size() << "\n";
  }
  emit(cfg, cfg.output == Output::Json ? all.dump(2) + "\n" : os.str());
  return 0;
}

int cmd_eichler(const RunConfig& cfg) {
  const bool primed = cfg.prime_variant || (cfg.variant && parse_variant(*cfg.variant) == Variant::LambdaPrime);
  auto params = params_for(cfg, primed ? Variant::LambdaPrime : Variant::Lambda);
  const i64 q = pick_q(cfg, params);
  const i64 cp = params.cp();
  i64 r;
  if (cfg.r) {
    r = *cfg.r;
  } else {
    auto r0 = sqrt_mod_prime(mod(-cp, q), q);
    r = primed ? lift_sqrt_mod_4q(*r0, q, cp) : *r0;
  }
  if (primed ? mod((__int128)r * r % (4 * q) + cp, 4 * q) != 0 : mod((__int128)r * r % q + cp, q) != 0)
    throw Usage("r = " + std::to_string(r) + " does not solve r^2 + cp = 0 mod " + (primed ? "4q" : "q"));
  QuatOrder O = primed ? eichler_Oprime(params, q, r) : eichler_O(params, q, r);
  EichlerReport rep;
  rep.order = O;
  rep.disc = discriminant(O).get_str();
  rep.form = order_to_form(O);
  auto discs = embedded_discs(O, (primed ? 4 : 1) * rep.form.ap);
  rep.minima.assign(discs.begin(), discs.begin() + std::min<std::size_t>(2, discs.size()));
  if (cfg.output == Output::Json) {
    emit(cfg, json(rep).dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << O.name << " in H(-" << O.alg.cp << ",-" << O.alg.q << ")\n";
  for (const auto& e : O.basis) os << "  " << e.str() << "\n";
  os << "disc " << rep.disc << "\nform " << rep.form.str() << "\nminima";
  for (i64 m : rep.minima) os << " " << m;
  os << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_correspond(const RunConfig& cfg) {
  std::ostringstream os;
  json all = json::array();
  bool violation = false;
  for (Variant v : variants_for(cfg)) {
    auto params = params_for(cfg, v);
    CorrespondReport rep{cfg.p, correspondence_table(params, pick_q(cfg, params))};
    for (const auto& row : rep.rows) violation = violation || row.theorem_violation || row.bad_disc;
    if (cfg.output == Output::Json) {
      json j = rep;
      j["variant"] = v;
      all.push_back(j);
      continue;
    }
    for (const auto& row : rep.rows) {
      os << pad(row.order_label, 18) << pad(row.form_str(), 16) << pad(row.j_str(), 22)
         << (row.in_Fp ? "F_p  " : "F_p^2") << "  fiber " << fiber_size(row);
      if (!row.note.empty()) os << "  THEOREM_VIOLATION: " << row.note;
      os << "\n";
    }
  }
  emit(cfg, cfg.output == Output::Json ? all.dump(2) + "\n" : os.str());
  return violation ? 1 : 0;
}

int cmd_graph(const RunConfig& cfg) {
  auto params = params_for(cfg, Variant::Lambda);
  OrientedGraph g = oriented_graph(params, cfg.ell);
  // Phi_3 multiplicities between the j-invariants in the graph.
  std::set<Fq> js;
  for (const auto& pr : g.pairs) js.insert(pr.j);
  struct Count {
    Fq a, b;
    int n;
  };
  std::vector<Count> counts;
  if (cfg.p != 3)
    for (const auto& a : js)
      for (const auto& b : js)
        if (!(b < a) || b == a.frob())
          if (int n = isogeny_count(a, b, 3)) counts.push_back({a, b, n});
  if (cfg.output == Output::Json) {
    json j = export_graph(g);
    j["phi3_counts"] = json::array();
    for (const auto& k : counts) j["phi3_counts"].push_back({{"from", k.a.str()}, {"to", k.b.str()}, {"count", k.n}});
    emit(cfg, j.dump(2) + "\n");
  } else if (cfg.output == Output::Dot) {
    std::string dot = to_dot(g);
    std::string notes;
    for (const auto& k : counts)
      notes += "  // phi3 " + k.a.str() + " -> " + k.b.str() + ": " + std::to_string(k.n) + "\n";
    dot.insert(dot.rfind('}'), notes);
    emit(cfg, dot);
  } else {
    std::ostringstream os;
    os << g.nodes.size() << " oriented nodes, " << g.edges().size() << " " << cfg.ell << "-isogeny edges"
       << (g.certified ? "" : " (orientation signs not certified)") << "\n";
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
      os << "  " << g.label(static_cast<int>(v)) << (g.nodes[v].surface ? "  surface" : "  floor") << " ->";
      for (int w : g.out[v]) os << " " << g.nodes[w].id;
      os << "\n";
    }
    os << "3-isogenies (Phi_3 multiplicities):\n";
    for (const auto& k : counts) os << "  " << k.a.str() << " -> " << k.b.str() << ": " << k.n << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_hilbert(const RunConfig& cfg) {
  if (!cfg.d1) throw Usage("hilbert needs --d1");
  ClassPolynomial H = hilbert(*cfg.d1, cfg.precision);
  std::optional<Poly> Hp;
  if (cfg.p > 3 && is_prime(cfg.p)) Hp = hilbert_mod(*cfg.d1, cfg.p);
  if (cfg.output == Output::Json) {
    json j = H;
    if (Hp) {
      j["p"] = cfg.p;
      j["mod_p"] = poly_to_json(*Hp);
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "H_" << H.D << " (degree " << H.degree() << ", " << H.precision_bits << " bits):\n";
  for (int i = H.degree(); i >= 0; --i) os << "  X^" << i << ": " << H.coeffs[i].get_str() << "\n";
  if (Hp) os << "mod " << cfg.p << ": " << factor_str(factor(*Hp, false)) << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_gz(const RunConfig& cfg) {
  if (!cfg.d1 || !cfg.d2) throw Usage("gz needs --d1 and --d2");
  if (!is_prime(cfg.p)) throw Usage("--p must be prime");
  int v = resultant_vp(*cfg.d1, *cfg.d2, cfg.p);
  if (cfg.output == Output::Json)
    emit(cfg, json{{"D1", *cfg.d1}, {"D2", *cfg.d2}, {"p", cfg.p}, {"vp", v}}.dump(2) + "\n");
  else
    emit(cfg, std::to_string(v) + "\n");
  return 0;
}

int cmd_verify_paper(const RunConfig& cfg) {
  params_for(cfg, Variant::Lambda);
  auto checks = verify_paper(cfg.p, cfg.c, cfg.seed);
  bool ok = true;
  std::ostringstream os;
  json all = json::array();
  for (const auto& ch : checks) {
    ok = ok && ch.pass;
    all.push_back(ch);
    os << (ch.pass ? "PASS " : "FAIL ") << std::left << std::setw(26) << ch.key << " " << ch.detail << "\n";
  }
  emit(cfg, cfg.output == Output::Json ? all.dump(2) + "\n" : os.str());
  if (!ok)
    for (const auto& ch : checks)
      if (!ch.pass) {
        std::cerr << "first failing check: " << ch.key << "\n";
        break;
      }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eichler orders, binary quadratic forms and oriented supersingular curves"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string output = "text";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime p > 3");
    sub->add_option("--c", cfg.c, "prime level c < 3p/16");
    sub->add_option("--q", cfg.q, "prime q with q = 3 (mod 8), (p/q) = -1, (c/q) = 1 (q = 7 mod 8 when c = 2)");
    sub->add_option("--r", cfg.r, "root of r^2 + cp mod q (mod 4q for the primed order)");
    sub->add_option("--ell", cfg.ell, "isogeny degree");
    sub->add_option("--variant", cfg.variant, "lambda or lambda-prime");
    sub->add_flag("--prime-variant", cfg.prime_variant, "use O'_c and discriminant -cp");
    sub->add_option("--output", output, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--precision", cfg.precision, "bits for the analytic class polynomial");
    sub->add_option("--out", cfg.out_path, "write to this file instead of stdout");
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
    sub->add_option("--phi3", cfg.phi3, "path of the Phi_3 coefficient file");
    sub->add_option("--d1", cfg.d1, "first discriminant");
    sub->add_option("--d2", cfg.d2, "second discriminant");
  };
  std::map<std::string, int (*)(const RunConfig&)> commands = {
      {"genus", cmd_genus},   {"eichler", cmd_eichler}, {"correspond", cmd_correspond},
      {"graph", cmd_graph},   {"hilbert", cmd_hilbert}, {"gz", cmd_gz},
      {"verify-paper", cmd_verify_paper},
  };
  const std::map<std::string, std::string> help = {
      {"genus", "forms in the genus class of q and the ambiguous ones"},
      {"eichler", "build O_c(q,r) or O'_c(q,r'): basis, discriminant, reduced form, minima"},
      {"correspond", "order / form / j-invariant table"},
      {"graph", "oriented ell-isogeny graph and Phi_3 multiplicities"},
      {"hilbert", "Hilbert class polynomial H_D, reduced mod p when --p is given"},
      {"gz", "p-adic valuation of Res(H_D1, H_D2)"},
      {"verify-paper", "run every reference check for (p, c)"},
  };
  for (const auto& [name, fn] : commands) common(app.add_subcommand(name, help.at(name)));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.output = output == "json" ? Output::Json : output == "dot" ? Output::Dot : Output::Text;
  try {
    if (!cfg.phi3.empty()) set_phi3_path(cfg.phi3);
    for (const auto& [name, fn] : commands)
      if (app.got_subcommand(name)) return fn(cfg);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
