#include "eichler/serialize.hpp"

#include <map>

#include "eichler/error.hpp"

namespace eichler {

Fq parse_fq(const std::string& s, i64 p) {
  const FieldCtx* K = fp2_ctx(p);
  try {
    std::size_t plus = s.find('+');
    std::size_t star = s.find("*a");
    if (star == std::string::npos) return Fq(K, mod(std::stoll(s), p));
    if (plus == std::string::npos) return Fq(K, 0, mod(std::stoll(s.substr(0, star)), p));
    return Fq(K, mod(std::stoll(s.substr(0, plus)), p), mod(std::stoll(s.substr(plus + 1, star - plus - 1)), p));
  } catch (const std::logic_error&) {
    throw Error(Errc::Parse, "bad field element '" + s + "'");
  }
}

json poly_to_json(const Poly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.str());
  return a;
}

Poly poly_from_json(const json& j, i64 p) {
  std::vector<Fq> c;
  for (const auto& x : j) c.push_back(parse_fq(x.get<std::string>(), p));
  return Poly(fp2_ctx(p), c);
}

void to_json(json& j, const Variant& v) { j = variant_name(v); }

void from_json(const json& j, Variant& v) {
  std::string s = j.get<std::string>();
  if (s == variant_name(Variant::Lambda)) v = Variant::Lambda;
  else if (s == variant_name(Variant::LambdaPrime)) v = Variant::LambdaPrime;
  else throw Error(Errc::Parse, "unknown variant '" + s + "'");
}

void to_json(json& j, const BQForm& f) { j = {{"form", {f.a, f.b, f.ap}}, {"D", f.disc()}}; }

void from_json(const json& j, BQForm& f) {
  const auto& t = j.at("form");
  f = {t.at(0).get<i64>(), t.at(1).get<i64>(), t.at(2).get<i64>()};
  if (j.contains("D") && j.at("D").get<i64>() != f.disc()) throw Error(Errc::Parse, "form and D disagree");
}

void to_json(json& j, const QuatAlgebra& a) { j = {{"cp", a.cp}, {"q", a.q}}; }
void from_json(const json& j, QuatAlgebra& a) { a = {j.at("cp").get<i64>(), j.at("q").get<i64>()}; }

void to_json(json& j, const QuatOrder& O) {
  json basis = json::array();
  for (const auto& e : O.basis) {
    json row = json::array();
    for (const auto& x : e.c) row.push_back({{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}});
    basis.push_back(row);
  }
  j = {{"algebra", O.alg}, {"basis", basis}, {"name", O.name}, {"label", nullptr}};
  if (O.label) {
    const auto& L = *O.label;
    j["label"] = {{"q", L.q}, {"r", L.r}, {"variant", L.variant}, {"p", L.p}, {"c", L.c}};
  }
}

void from_json(const json& j, QuatOrder& O) {
  O.alg = j.at("algebra").get<QuatAlgebra>();
  const auto& b = j.at("basis");
  if (b.size() != 4) throw Error(Errc::Parse, "an order needs 4 basis elements");
  for (int i = 0; i < 4; ++i) {
    if (b[i].size() != 4) throw Error(Errc::Parse, "basis elements have 4 coordinates");
    O.basis[i].alg = O.alg;
    for (int k = 0; k < 4; ++k) {
      mpq_class x(mpz_class(b[i][k].at("num").get<std::string>()), mpz_class(b[i][k].at("den").get<std::string>()));
      x.canonicalize();
      O.basis[i].c[k] = x;
    }
  }
  O.name = j.value("name", "");
  O.label.reset();
  if (j.contains("label") && !j.at("label").is_null()) {
    const auto& L = j.at("label");
    O.label = OrderLabel{L.at("q").get<i64>(), L.at("r").get<i64>(), L.at("variant").get<Variant>(),
                         L.at("p").get<i64>(), L.at("c").get<i64>()};
  }
}

namespace {

json row_to_json(const CorrespondenceRow& r) {
  json js = json::array();
  for (const auto& x : r.j_values) js.push_back(x.str());
  json rep = nullptr;
  if (r.rep_solution) rep = {r.rep_solution->first, r.rep_solution->second};
  return {{"form", r.form},
          {"display", r.form_str()},
          {"pm", r.pm},
          {"variant", r.variant},
          {"order", r.order},
          {"q", r.q},
          {"r", r.r},
          {"order_label", r.order_label},
          {"D1", r.D1},
          {"D2", r.D2},
          {"bad_disc", r.bad_disc},
          {"gcd", poly_to_json(r.gcd_poly)},
          {"j_values", js},
          {"in_Fp", r.in_Fp},
          {"rep_solution", rep},
          {"fiber_size", fiber_size(r)},
          {"theorem_violation", r.theorem_violation},
          {"note", r.note}};
}

CorrespondenceRow row_from_json(const json& j, i64 p) {
  CorrespondenceRow r;
  r.form = j.at("form").get<BQForm>();
  r.pm = j.at("pm").get<bool>();
  r.variant = j.at("variant").get<Variant>();
  r.order = j.at("order").get<i64>();
  r.q = j.at("q").get<i64>();
  r.r = j.at("r").get<i64>();
  r.order_label = j.at("order_label").get<std::string>();
  r.D1 = j.at("D1").get<i64>();
  r.D2 = j.at("D2").get<i64>();
  r.bad_disc = j.at("bad_disc").get<bool>();
  r.gcd_poly = poly_from_json(j.at("gcd"), p);
  for (const auto& x : j.at("j_values")) r.j_values.push_back(parse_fq(x.get<std::string>(), p));
  r.in_Fp = j.at("in_Fp").get<bool>();
  if (!j.at("rep_solution").is_null())
    r.rep_solution = std::make_pair(j.at("rep_solution").at(0).get<i64>(), j.at("rep_solution").at(1).get<i64>());
  r.theorem_violation = j.at("theorem_violation").get<bool>();
  r.note = j.at("note").get<std::string>();
  return r;
}

}  // namespace

void to_json(json& j, const CorrespondReport& r) {
  j = {{"p", r.p}, {"rows", json::array()}};
  for (const auto& row : r.rows) j["rows"].push_back(row_to_json(row));
}

void from_json(const json& j, CorrespondReport& r) {
  r.p = j.at("p").get<i64>();
  r.rows.clear();
  for (const auto& x : j.at("rows")) r.rows.push_back(row_from_json(x, r.p));
}

void to_json(json& j, const GenusReport& r) {
  j = {{"p", r.p},           {"c", r.c},          {"q", r.q},
       {"variant", r.variant}, {"lambda", r.lambda}, {"forms", r.forms},
       {"eta", r.ambiguous.size()}, {"ambiguous", r.ambiguous}};
}

void from_json(const json& j, GenusReport& r) {
  r.p = j.at("p").get<i64>();
  r.c = j.at("c").get<i64>();
  r.q = j.at("q").get<i64>();
  r.variant = j.at("variant").get<Variant>();
  r.lambda = j.at("lambda").get<std::vector<int>>();
  r.forms = j.at("forms").get<std::vector<BQForm>>();
  r.ambiguous = j.at("ambiguous").get<std::vector<BQForm>>();
}

void to_json(json& j, const EichlerReport& r) {
  j = {{"order", r.order}, {"disc", r.disc}, {"form", r.form}, {"minima", r.minima}};
}

void from_json(const json& j, EichlerReport& r) {
  r.order = j.at("order").get<QuatOrder>();
  r.disc = j.at("disc").get<std::string>();
  r.form = j.at("form").get<BQForm>();
  r.minima = j.at("minima").get<std::vector<i64>>();
}

GraphExport export_graph(const OrientedGraph& g) {
  GraphExport e;
  e.p = g.params.p;
  e.c = g.params.c;
  e.ell = g.ell;
  e.certified = g.certified;
  e.symmetric = g.symmetric;
  for (const auto& n : g.nodes) {
    const auto& pr = g.pairs[n.pair];
    e.nodes.push_back({n.id, pr.j.str(), pr.G.str(), n.surface, g.nodes[n.conj].id});
  }
  for (auto [u, v] : g.edges()) e.edges.emplace_back(g.nodes[u].id, g.nodes[v].id);
  return e;
}

void to_json(json& j, const GraphExport& g) {
  json nodes = json::array(), edges = json::array(), pairing = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.id}, {"j", n.j}, {"kernel", n.kernel}, {"surface", n.surface}, {"conj", n.conj}});
    if (n.id < n.conj) pairing.push_back({n.id, n.conj});
  }
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  j = {{"p", g.p},           {"c", g.c},         {"ell", g.ell},         {"nodes", nodes},
       {"edges", edges},     {"conjugation", pairing}, {"certified", g.certified}, {"symmetric", g.symmetric}};
}

void from_json(const json& j, GraphExport& g) {
  g.p = j.at("p").get<i64>();
  g.c = j.at("c").get<i64>();
  g.ell = j.at("ell").get<int>();
  g.certified = j.at("certified").get<bool>();
  g.symmetric = j.at("symmetric").get<bool>();
  g.nodes.clear();
  g.edges.clear();
  for (const auto& n : j.at("nodes"))
    g.nodes.push_back({n.at("id").get<std::string>(), n.at("j").get<std::string>(), n.at("kernel").get<std::string>(),
                       n.at("surface").get<bool>(), n.at("conj").get<std::string>()});
  for (const auto& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
}

void to_json(json& j, const ClassPolynomial& H) {
  json c = json::array();
  for (const auto& x : H.coeffs) c.push_back(x.get_str());
  j = {{"D", H.D}, {"coefficients", c}, {"precision_bits", H.precision_bits}};
}

void from_json(const json& j, ClassPolynomial& H) {
  H.D = j.at("D").get<i64>();
  H.precision_bits = j.at("precision_bits").get<long>();
  H.coeffs.clear();
  for (const auto& x : j.at("coefficients")) H.coeffs.emplace_back(x.get<std::string>());
}

void to_json(json& j, const Check& c) {
  j = {{"key", c.key}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}};
}

void from_json(const json& j, Check& c) {
  c.key = j.at("key").get<std::string>();
  c.pass = j.at("pass").get<bool>();
  c.detail = j.at("detail").get<std::string>();
  c.seconds = j.at("seconds").get<double>();
}

}  // namespace eichler
