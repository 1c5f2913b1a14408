#include "eichler/modpoly.hpp"

#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include "eichler/ec.hpp"
#include "eichler/error.hpp"

#ifndef EICHLER_DATA_DIR
#define EICHLER_DATA_DIR "data"
#endif

namespace eichler {

namespace {

std::mutex phi_mu;
std::string phi3_path = std::string(EICHLER_DATA_DIR) + "/phi3.txt";
std::unique_ptr<ModularPolynomial> phi3_cache;

ModularPolynomial make_phi2() {
  ModularPolynomial phi{2, {}};
  const char* coeffs[][3] = {{"3", "0", "1"},           {"2", "2", "-1"},          {"2", "1", "1488"},
                             {"2", "0", "-162000"},     {"1", "1", "40773375"},    {"1", "0", "8748000000"},
                             {"0", "0", "-157464000000000"}};
  for (auto& t : coeffs) phi.terms.push_back({std::stoi(t[0]), std::stoi(t[1]), mpz_class(t[2])});
  return phi;
}

}  // namespace

ModularPolynomial parse_modular_polynomial(int ell, const std::string& text) {
  ModularPolynomial phi{ell, {}};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int i, j;
    std::string c;
    if (!(ls >> i)) continue;
    if (!(ls >> j >> c)) throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": expected 'i j coefficient'");
    mpz_class v;
    if (v.set_str(c, 10) != 0) throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": bad integer");
    phi.terms.push_back({i, j, v});
  }
  return phi;
}

std::string validate_modular_polynomial(const ModularPolynomial& phi) {
  const int top = phi.ell + 1;
  std::set<std::pair<int, int>> seen;
  bool has_top = false;
  for (const auto& t : phi.terms) {
    if (t.i < t.j) return "monomial X^" + std::to_string(t.i) + " Y^" + std::to_string(t.j) + " has i < j";
    if (t.i > top) return "degree exceeds ell + 1";
    if (!seen.insert({t.i, t.j}).second) return "duplicate monomial";
    if (t.i == top && t.j == top) return "X^(ell+1) Y^(ell+1) cannot occur";
    if (t.i == top && t.j == 0) has_top = t.c == 1;
  }
  if (!has_top) return "X^(ell+1) must have coefficient 1";
  // Velu consistency on a handful of curves over F_{101^2}.
  const FieldCtx* K = fp2_ctx(101);
  for (int k = 2; k < 8; ++k) {
    Curve E = Curve::make(Fq(K, k, 1), Fq(K, 3 * k + 1, k));
    Fq j = j_invariant(E);
    for (const auto& G : order_c_kernels(E, phi.ell)) {
      Fq j2 = codomain_j(G);
      if (!phi_eval(phi, j, j2).is_zero()) return "Phi(j(E), j(E/G)) != 0 for a Velu isogeny";
    }
  }
  return "";
}

void set_phi3_path(const std::string& path) {
  std::lock_guard<std::mutex> lock(phi_mu);
  phi3_path = path;
  phi3_cache.reset();
}

const ModularPolynomial& phi_poly(int ell) {
  if (ell == 2) {
    static const ModularPolynomial phi2 = make_phi2();
    return phi2;
  }
  if (ell != 3) throw Error(Errc::UnsupportedEll, "only ell = 2 and ell = 3 are tabulated");
  std::lock_guard<std::mutex> lock(phi_mu);
  if (!phi3_cache) {
    std::ifstream in(phi3_path);
    if (!in) throw Error(Errc::Parse, "cannot open " + phi3_path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto phi = std::make_unique<ModularPolynomial>(parse_modular_polynomial(3, ss.str()));
    std::string why = validate_modular_polynomial(*phi);
    if (!why.empty()) throw Error(Errc::Parse, phi3_path + ": " + why);
    phi3_cache = std::move(phi);
  }
  return *phi3_cache;
}

static Fq reduce_coeff(const FieldCtx* K, const mpz_class& c) {
  mpz_class r, pp = K->p;
  mpz_mod(r.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
  return Fq(K, r.get_si());
}

Fq phi_eval(const ModularPolynomial& phi, const Fq& x, const Fq& y) {
  const FieldCtx* K = x.ctx();
  Fq s(K, 0);
  for (const auto& t : phi.terms) {
    Fq c = reduce_coeff(K, t.c);
    s += c * x.pow(static_cast<u64>(t.i)) * y.pow(static_cast<u64>(t.j));
    if (t.i != t.j) s += c * x.pow(static_cast<u64>(t.j)) * y.pow(static_cast<u64>(t.i));
  }
  return s;
}

Poly phi_in_y(const ModularPolynomial& phi, const Fq& x) {
  const FieldCtx* K = x.ctx();
  std::vector<Fq> c(phi.ell + 2, Fq(K, 0));
  for (const auto& t : phi.terms) {
    Fq k = reduce_coeff(K, t.c);
    c[t.j] += k * x.pow(static_cast<u64>(t.i));
    if (t.i != t.j) c[t.i] += k * x.pow(static_cast<u64>(t.j));
  }
  return Poly(K, c);
}

int isogeny_count(const Fq& j1, const Fq& j2, int ell) {
  Poly f = phi_in_y(phi_poly(ell), j1);
  int m = 0;
  for (const Fq& r : roots(f, true))
    if (r == j2) ++m;
  return m;
}

}  // namespace eichler
