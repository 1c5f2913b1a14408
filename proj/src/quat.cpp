#include "eichler/quat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "eichler/error.hpp"

namespace eichler {

namespace {

using QMat = std::vector<std::vector<mpq_class>>;
using ZMat = std::vector<std::vector<mpz_class>>;

mpq_class det(QMat m) {
  const std::size_t n = m.size();
  mpq_class d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      mpq_class f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return d;
}

// Solve v = coeffs * B for coeffs (B rows are basis vectors).
std::optional<std::array<mpq_class, 4>> solve_row(const QMat& B, const std::array<mpq_class, 4>& v) {
  // Transpose system: B^T coeffs^T = v^T.
  QMat a(4, std::vector<mpq_class>(5));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a[i][j] = B[j][i];
    a[i][4] = v[i];
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    while (piv < 4 && a[piv][col] == 0) ++piv;
    if (piv == 4) return std::nullopt;
    std::swap(a[piv], a[col]);
    for (int r = 0; r < 4; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[col][col];
      for (int k = col; k < 5; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::array<mpq_class, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = a[i][4] / a[i][i];
  return out;
}

QMat as_matrix(const std::array<QuatElement, 4>& basis) {
  QMat m(4, std::vector<mpq_class>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = basis[i].c[j];
  return m;
}

mpz_class common_denominator(const std::vector<const mpq_class*>& xs) {
  mpz_class d = 1;
  for (auto* x : xs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x->get_den_mpz_t());
  return d;
}

// Row-style Hermite normal form of an integer matrix; zero rows dropped.
ZMat hnf(ZMat rows) {
  if (rows.empty()) return rows;
  const std::size_t ncol = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncol && r < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        mpz_class t;
        mpz_fdiv_q(t.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        for (std::size_t k = col; k < ncol; ++k) rows[i][k] -= t * rows[r][k];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][col] != 0) {
      if (rows[r][col] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        mpz_class t;
        mpz_fdiv_q(t.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        for (std::size_t k = col; k < ncol; ++k) rows[i][k] -= t * rows[r][k];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

struct IntLattice {
  ZMat rows;      // HNF basis
  mpz_class den;  // lattice = rows / den
};

IntLattice to_int(const std::array<QuatElement, 4>& basis, const mpz_class& den) {
  ZMat m(4, std::vector<mpz_class>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mpq_class v = basis[i].c[j] * den;
      if (v.get_den() != 1) throw Error(Errc::DegenerateBasis, "denominator mismatch");
      m[i][j] = v.get_num();
    }
  return {hnf(m), den};
}

mpz_class lattice_den(const QuatOrder& O) {
  std::vector<const mpq_class*> xs;
  for (const auto& e : O.basis)
    for (const auto& v : e.c) xs.push_back(&v);
  return common_denominator(xs);
}

}  // namespace

QuatElement QuatElement::make(const QuatAlgebra& A, mpq_class w, mpq_class x, mpq_class y, mpq_class z) {
  QuatElement e{A, {w, x, y, z}};
  for (auto& v : e.c) v.canonicalize();
  return e;
}

bool QuatElement::is_zero() const {
  return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

std::string QuatElement::str() const {
  static const char* names[4] = {"", "a", "b", "ab"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (c[i] == 0) continue;
    std::string v = c[i].get_str();
    if (!out.empty()) out += (c[i] > 0 ? " + " : " - ");
    else if (c[i] < 0) out += "-";
    if (c[i] < 0) v = mpq_class(-c[i]).get_str();
    out += (i > 0 && v == "1") ? std::string(names[i]) : v + (i > 0 ? std::string("*") + names[i] : "");
  }
  return out.empty() ? "0" : out;
}

static void check_alg(const QuatElement& x, const QuatElement& y) {
  if (!(x.alg == y.alg)) throw Error(Errc::AlgebraMismatch, "elements of different algebras");
}

QuatElement operator+(const QuatElement& x, const QuatElement& y) {
  check_alg(x, y);
  QuatElement r = x;
  for (int i = 0; i < 4; ++i) r.c[i] += y.c[i];
  return r;
}

QuatElement operator-(const QuatElement& x, const QuatElement& y) {
  check_alg(x, y);
  QuatElement r = x;
  for (int i = 0; i < 4; ++i) r.c[i] -= y.c[i];
  return r;
}

QuatElement operator*(const mpq_class& s, const QuatElement& x) {
  QuatElement r = x;
  for (auto& v : r.c) v *= s;
  return r;
}

QuatElement mul(const QuatElement& x, const QuatElement& y) {
  check_alg(x, y);
  const mpq_class A = -x.alg.cp;  // alpha^2
  const mpq_class B = -x.alg.q;   // beta^2
  const auto& [w1, x1, y1, z1] = x.c;
  const auto& [w2, x2, y2, z2] = y.c;
  QuatElement r{x.alg, {}};
  r.c[0] = w1 * w2 + A * x1 * x2 + B * y1 * y2 - A * B * z1 * z2;
  r.c[1] = w1 * x2 + x1 * w2 - B * y1 * z2 + B * z1 * y2;
  r.c[2] = w1 * y2 + y1 * w2 + A * x1 * z2 - A * z1 * x2;
  r.c[3] = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2;
  return r;
}

QuatElement operator*(const QuatElement& x, const QuatElement& y) { return mul(x, y); }

QuatElement conj(const QuatElement& x) {
  return QuatElement{x.alg, {x.c[0], -x.c[1], -x.c[2], -x.c[3]}};
}

mpq_class trd(const QuatElement& x) { return 2 * x.c[0]; }

mpq_class nrd(const QuatElement& x) {
  const mpq_class cp = x.alg.cp, q = x.alg.q;
  return x.c[0] * x.c[0] + cp * x.c[1] * x.c[1] + q * x.c[2] * x.c[2] + cp * q * x.c[3] * x.c[3];
}

std::array<std::array<mpq_class, 4>, 4> QuatOrder::gram() const {
  std::array<std::array<mpq_class, 4>, 4> g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = trd(basis[i] * conj(basis[j]));
  return g;
}

QuatAlgebra algebra_for(const PrimeParams& params, i64 q) { return QuatAlgebra{params.cp(), q}; }

QuatOrder lattice_from(const QuatAlgebra& A, const std::array<QuatElement, 4>& basis, std::string name) {
  if (det(as_matrix(basis)) == 0) throw Error(Errc::DegenerateBasis, "basis is linearly dependent");
  return QuatOrder{A, basis, std::nullopt, std::move(name)};
}

static void require(bool ok, const std::string& why) {
  if (!ok) throw Error(Errc::BadParams, why);
}

QuatOrder eichler_O(const PrimeParams& params, i64 q, i64 r) {
  const i64 cp = params.cp();
  require(satisfies_eq1(params, q), "q = " + std::to_string(q) + " fails the congruence conditions on q");
  require(mod((__int128)r * r % q + cp, q) == 0, "r^2 + cp must vanish mod q");
  QuatAlgebra A = algebra_for(params, q);
  mpq_class half(1, 2), invq(1, q);
  auto one = QuatElement::one(A), al = QuatElement::alpha(A), be = QuatElement::beta(A);
  auto e1 = half * (one + be);
  auto e2 = al * e1;
  auto e3 = invq * ((mpq_class(r) * one + al) * be);
  QuatOrder O{A, {one, e1, e2, e3}, OrderLabel{q, mod(r, q), Variant::Lambda, params.p, params.c},
              "O_" + std::to_string(params.c) + "(" + std::to_string(q) + "," + std::to_string(mod(r, q)) + ")"};
  if (!is_order(O)) throw Error(Errc::NotAnOrder, O.name);
  return O;
}

QuatOrder eichler_Oprime(const PrimeParams& params, i64 q, i64 rprime) {
  const i64 cp = params.cp();
  require(mod(cp, 4) == 3, "the primed order needs cp = 3 (mod 4)");
  require(satisfies_eq1(params, q), "q = " + std::to_string(q) + " fails the congruence conditions on q");
  require(mod((__int128)rprime * rprime % (4 * q) + cp, 4 * q) == 0, "r'^2 + cp must vanish mod 4q");
  QuatAlgebra A = algebra_for(params, q);
  mpq_class half(1, 2), inv2q(1, 2 * q);
  auto one = QuatElement::one(A), al = QuatElement::alpha(A), be = QuatElement::beta(A);
  auto e1 = half * (one + al);
  auto e3 = inv2q * ((mpq_class(rprime) * one + al) * be);
  i64 rp = mod(rprime, 2 * q);
  QuatOrder O{A, {one, e1, be, e3}, OrderLabel{q, rp, Variant::LambdaPrime, params.p, params.c},
              "O'_" + std::to_string(params.c) + "(" + std::to_string(q) + "," + std::to_string(rp) + ")"};
  if (!is_order(O)) throw Error(Errc::NotAnOrder, O.name);
  return O;
}

QuatOrder eichler_Otilde(const PrimeParams& params, i64 q, i64 r) {
  QuatAlgebra A = algebra_for(params, q);
  mpq_class half(1, 2), invq(1, q);
  auto one = QuatElement::one(A), al = QuatElement::alpha(A), be = QuatElement::beta(A);
  auto ab = QuatElement::alphabeta(A);
  auto e2 = half * (one + al + be + ab);
  auto e3 = invq * ((mpq_class(r) * one + al) * be);
  return lattice_from(A, {one, be, e2, e3},
                      "Otilde_" + std::to_string(params.c) + "(" + std::to_string(q) + "," + std::to_string(r) + ")");
}

QuatOrder standard_order(const QuatAlgebra& A) {
  return lattice_from(A, {QuatElement::one(A), QuatElement::alpha(A), QuatElement::beta(A), QuatElement::alphabeta(A)},
                      "Z<1,a,b,ab>");
}

std::optional<std::array<mpq_class, 4>> coordinates(const std::array<QuatElement, 4>& basis, const QuatElement& x) {
  return solve_row(as_matrix(basis), x.c);
}

static bool integral(const std::array<mpq_class, 4>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& t) { return t.get_den() == 1; });
}

bool contains(const QuatOrder& O, const QuatElement& x) {
  auto co = coordinates(O.basis, x);
  return co && integral(*co);
}

bool is_order(const std::array<QuatElement, 4>& basis) {
  QMat B = as_matrix(basis);
  if (det(B) == 0) throw Error(Errc::DegenerateBasis, "basis is linearly dependent");
  auto in_lattice = [&](const QuatElement& x) {
    auto co = solve_row(B, x.c);
    return co && integral(*co);
  };
  if (!in_lattice(QuatElement::one(basis[0].alg))) return false;
  for (const auto& e : basis) {
    if (trd(e).get_den() != 1 || nrd(e).get_den() != 1) return false;
  }
  for (const auto& x : basis)
    for (const auto& y : basis)
      if (!in_lattice(x * y)) return false;
  return true;
}

bool is_order(const QuatOrder& O) { return is_order(O.basis); }

mpz_class discriminant(const QuatOrder& O) {
  auto g = O.gram();
  QMat m(4, std::vector<mpq_class>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = g[i][j];
  mpq_class d = det(m);
  if (d.get_den() != 1) throw Error(Errc::NotAnOrder, "non-integral discriminant");
  return abs(d.get_num());
}

QuatOrder intersect(const QuatOrder& O1, const QuatOrder& O2) {
  if (!(O1.alg == O2.alg)) throw Error(Errc::AlgebraMismatch, "orders in different algebras");
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), lattice_den(O1).get_mpz_t(), lattice_den(O2).get_mpz_t());
  IntLattice L1 = to_int(O1.basis, den), L2 = to_int(O2.basis, den);
  // Left kernel of [L1; L2]: rows (u, w) with u L1 + w L2 = 0, so u L1 lies in both.
  ZMat aug(8, std::vector<mpz_class>(12));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      aug[i][j] = L1.rows[i][j];
      aug[4 + i][j] = L2.rows[i][j];
    }
    aug[i][4 + i] = 1;
    aug[4 + i][8 + i] = 1;
  }
  ZMat red = hnf(aug);
  ZMat meet;
  for (const auto& row : red) {
    bool zero_head = std::all_of(row.begin(), row.begin() + 4, [](const mpz_class& v) { return v == 0; });
    if (!zero_head) continue;
    std::vector<mpz_class> v(4);
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) v[j] += row[4 + k] * L1.rows[k][j];
    meet.push_back(v);
  }
  meet = hnf(meet);
  if (meet.size() != 4) throw Error(Errc::DegenerateBasis, "intersection is not of full rank");
  std::array<QuatElement, 4> basis;
  for (int i = 0; i < 4; ++i) {
    basis[i] = QuatElement{O1.alg, {}};
    for (int j = 0; j < 4; ++j) {
      basis[i].c[j] = mpq_class(meet[i][j], den);
      basis[i].c[j].canonicalize();
    }
  }
  return QuatOrder{O1.alg, basis, std::nullopt, "(" + O1.name + " meet " + O2.name + ")"};
}

mpz_class index(const QuatOrder& sub, const QuatOrder& sup) {
  if (!(sub.alg == sup.alg)) throw Error(Errc::AlgebraMismatch, "orders in different algebras");
  QMat coords(4, std::vector<mpq_class>(4));
  for (int i = 0; i < 4; ++i) {
    auto co = coordinates(sup.basis, sub.basis[i]);
    if (!co || !integral(*co)) throw Error(Errc::NotSublattice, sub.name + " is not inside " + sup.name);
    for (int j = 0; j < 4; ++j) coords[i][j] = (*co)[j];
  }
  mpq_class d = det(coords);
  return abs(d.get_num());
}

bool same_lattice(const QuatOrder& O1, const QuatOrder& O2) {
  if (!(O1.alg == O2.alg)) return false;
  for (const auto& e : O1.basis)
    if (!contains(O2, e)) return false;
  for (const auto& e : O2.basis)
    if (!contains(O1, e)) return false;
  return true;
}

BQForm order_to_form(const QuatOrder& O) {
  if (!O.label) throw Error(Errc::Unlabeled, "order " + O.name + " carries no (q, r) label");
  const auto& L = *O.label;
  const i64 cp = L.c * L.p;
  if (L.variant == Variant::Lambda) {
    return reduce(BQForm{L.q, 4 * L.r, static_cast<i64>((4 * (__int128)L.r * L.r + 4 * cp) / L.q)});
  }
  return reduce(BQForm{L.q, L.r, static_cast<i64>(((__int128)L.r * L.r + cp) / (4 * L.q))});
}

namespace {

// O/Z embedded as the lattice of pure parts gamma - Trd(gamma)/2; there
// 4 Nrd is the discriminant form |Trd^2 - 4 Nrd|.
struct PureLattice {
  std::array<std::array<i64, 3>, 3> b;  // integer rows, lattice = rows / den
  i64 den;
  i64 cp, q;

  __int128 value(const std::array<i64, 3>& x) const {
    __int128 X = 0, Y = 0, Z = 0;
    for (int i = 0; i < 3; ++i) {
      X += (__int128)x[i] * b[i][0];
      Y += (__int128)x[i] * b[i][1];
      Z += (__int128)x[i] * b[i][2];
    }
    __int128 num = 4 * ((__int128)cp * X * X + (__int128)q * Y * Y + (__int128)cp * q * Z * Z);
    __int128 d2 = (__int128)den * den;
    if (num % d2 != 0) throw Error(Errc::NotAnOrder, "non-integral discriminant value");
    return num / d2;
  }
};

PureLattice pure_lattice(const QuatOrder& O) {
  std::vector<const mpq_class*> xs;
  for (const auto& e : O.basis)
    for (int j = 1; j < 4; ++j) xs.push_back(&e.c[j]);
  mpz_class den = common_denominator(xs);
  ZMat m;
  for (const auto& e : O.basis) {
    std::vector<mpz_class> row(3);
    for (int j = 1; j < 4; ++j) row[j - 1] = mpq_class(e.c[j] * den).get_num();
    m.push_back(row);
  }
  m = hnf(m);
  if (m.size() != 3) throw Error(Errc::DegenerateBasis, "O/Z is not of rank 3");
  PureLattice L{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (!m[i][j].fits_slong_p()) throw Error(Errc::DegenerateBasis, "lattice entries too large");
      L.b[i][j] = m[i][j].get_si();
    }
  L.den = den.get_si();
  L.cp = O.alg.cp;
  L.q = O.alg.q;
  return L;
}

// Fincke-Pohst: visit every x != 0 (up to sign) with value(x) <= bound.
template <class Visit>
void enumerate_short(const PureLattice& L, i64 bound, Visit visit) {
  using ld = long double;
  ld G[3][3];
  const ld w[3] = {static_cast<ld>(L.cp), static_cast<ld>(L.q), static_cast<ld>(L.cp) * L.q};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ld s = 0;
      for (int k = 0; k < 3; ++k) s += w[k] * L.b[i][k] * L.b[j][k];
      G[i][j] = 4 * s / (static_cast<ld>(L.den) * L.den);
    }
  // Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2
  ld d[3], m[3][3] = {};
  ld A[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A[i][j] = G[i][j];
  for (int i = 0; i < 3; ++i) {
    d[i] = A[i][i];
    for (int j = i + 1; j < 3; ++j) m[i][j] = A[i][j] / d[i];
    for (int j = i + 1; j < 3; ++j)
      for (int k = i + 1; k < 3; ++k) A[j][k] -= m[i][j] * A[i][k];
  }
  const ld B = static_cast<ld>(bound) * (1 + 1e-12L) + 1e-6L;
  std::array<i64, 3> x{};
  auto range = [&](int i, ld rem) {
    ld centre = 0;
    for (int j = i + 1; j < 3; ++j) centre -= m[i][j] * x[j];
    ld rad = rem > 0 ? std::sqrt(rem / d[i]) : 0;
    return std::pair<i64, i64>{static_cast<i64>(std::floor(centre - rad)) - 1,
                               static_cast<i64>(std::ceil(centre + rad)) + 1};
  };
  auto partial = [&](int i) {
    ld t = x[i];
    for (int j = i + 1; j < 3; ++j) t += m[i][j] * x[j];
    return d[i] * t * t;
  };
  auto [lo2, hi2] = range(2, B);
  for (x[2] = std::max<i64>(lo2, 0); x[2] <= hi2; ++x[2]) {
    ld r2 = B - partial(2);
    if (r2 < -1e-6L) continue;
    auto [lo1, hi1] = range(1, r2);
    for (x[1] = lo1; x[1] <= hi1; ++x[1]) {
      if (x[2] == 0 && x[1] < 0) continue;
      ld r1 = r2 - partial(1);
      if (r1 < -1e-6L) continue;
      auto [lo0, hi0] = range(0, r1);
      for (x[0] = lo0; x[0] <= hi0; ++x[0]) {
        if (x[2] == 0 && x[1] == 0 && x[0] <= 0) continue;
        __int128 v = L.value(x);
        if (v <= bound) visit(x, static_cast<i64>(v));
      }
    }
  }
}

}  // namespace

std::vector<i64> embedded_discs(const QuatOrder& O, i64 bound) {
  PureLattice L = pure_lattice(O);
  std::set<i64> vals;
  enumerate_short(L, bound, [&](const std::array<i64, 3>& x, i64 v) {
    if (gcd(gcd(x[0], x[1]), x[2]) == 1) vals.insert(v);
  });
  return {vals.begin(), vals.end()};
}

bool embeds_quadratic(const QuatOrder& O, i64 D) {
  if (D >= 0 || (mod(D, 4) != 0 && mod(D, 4) != 1)) return false;
  PureLattice L = pure_lattice(O);
  bool found = false;
  enumerate_short(L, -D, [&](const std::array<i64, 3>&, i64 v) {
    if (v == -D) found = true;
  });
  return found;
}

}  // namespace eichler
