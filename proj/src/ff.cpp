#include "eichler/ff.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "eichler/error.hpp"

namespace eichler {

const FieldCtx* fp2_ctx(i64 p) {
  static std::mutex mu;
  static std::map<i64, std::unique_ptr<FieldCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second.get();
  if (p < 3 || !is_prime(static_cast<u64>(p))) throw Error(Errc::BadParams, "field characteristic must be an odd prime");
  if (p >= (i64{1} << 31)) throw Error(Errc::PTooLarge, "p must be below 2^31");
  i64 n = 1;
  while (kronecker(mod(-n, p), p) != -1) ++n;
  auto ctx = std::make_unique<FieldCtx>(FieldCtx{p, n});
  const FieldCtx* out = ctx.get();
  cache.emplace(p, std::move(ctx));
  return out;
}

Fq::Fq(const FieldCtx* K, i64 u, i64 v) : K_(K), u_(mod(u, K->p)), v_(mod(v, K->p)) {}

static void same_ctx(const FieldCtx* a, const FieldCtx* b) {
  if (a != b && a && b) throw Error(Errc::CtxMismatch, "elements of different fields");
}

Fq Fq::operator+(const Fq& o) const {
  same_ctx(K_, o.K_);
  const i64 p = K_->p;
  i64 a = u_ + o.u_, b = v_ + o.v_;
  if (a >= p) a -= p;
  if (b >= p) b -= p;
  return Fq(K_, a, b, true);
}

Fq Fq::operator-(const Fq& o) const {
  same_ctx(K_, o.K_);
  const i64 p = K_->p;
  i64 a = u_ - o.u_, b = v_ - o.v_;
  if (a < 0) a += p;
  if (b < 0) b += p;
  return Fq(K_, a, b, true);
}

Fq Fq::operator-() const { return Fq(K_, u_ ? K_->p - u_ : 0, v_ ? K_->p - v_ : 0, true); }

Fq Fq::operator*(const Fq& o) const {
  same_ctx(K_, o.K_);
  const i64 p = K_->p;
  if (v_ == 0 && o.v_ == 0) return Fq(K_, u_ * o.u_ % p, 0, true);
  i64 bd = v_ * o.v_ % p * K_->n % p;
  i64 a = (u_ * o.u_ % p - bd + p) % p;
  i64 b = (u_ * o.v_ % p + v_ * o.u_ % p) % p;
  return Fq(K_, a, b, true);
}

Fq Fq::operator*(i64 s) const { return *this * Fq(K_, s); }

i64 Fq::norm() const {
  const i64 p = K_->p;
  return (u_ * u_ % p + K_->n * (v_ * v_ % p)) % p;
}

Fq Fq::inv() const {
  if (is_zero()) throw Error(Errc::Singular, "inverse of zero");
  const i64 p = K_->p;
  i64 ninv = static_cast<i64>(powmod(static_cast<u64>(norm()), static_cast<u64>(p - 2), static_cast<u64>(p)));
  return Fq(K_, u_ * ninv % p, (p - v_) % p * ninv % p, true);
}

Fq Fq::pow(u64 e) const {
  Fq r(K_, 1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Fq Fq::pow(const mpz_class& e) const {
  if (e < 0) return inv().pow(mpz_class(-e));
  Fq r(K_, 1);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r *= r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r *= *this;
  }
  return r;
}

bool Fq::is_square() const {
  if (is_zero()) return true;
  return kronecker(norm(), K_->p) == 1;
}

bool Fq::sqrt(Fq& out) const {
  const i64 p = K_->p;
  if (is_zero()) {
    out = *this;
    return true;
  }
  if (v_ == 0) {
    if (auto s = sqrt_mod_prime(u_, p)) {
      out = Fq(K_, *s, 0);
      return true;
    }
    // u = -n w^2 has root w*a.
    i64 w2 = mod(-u_ * static_cast<i64>(powmod(static_cast<u64>(K_->n), static_cast<u64>(p - 2), static_cast<u64>(p))), p);
    auto w = sqrt_mod_prime(w2, p);
    if (!w) return false;
    out = Fq(K_, 0, *w);
    return true;
  }
  auto s = sqrt_mod_prime(norm(), p);
  if (!s) return false;
  const i64 inv2 = (p + 1) / 2;
  for (i64 sign : {1, -1}) {
    i64 a2 = mod((u_ + sign * *s) % p * inv2, p);
    auto a = sqrt_mod_prime(a2, p);
    if (!a || *a == 0) continue;
    Fq A(K_, *a, 0);
    Fq B = Fq(K_, v_, 0) / (A * 2);
    out = A + B * Fq(K_, 0, 1);
    if (out * out == *this) return true;
  }
  return false;
}

std::string Fq::str() const {
  if (v_ == 0) return std::to_string(u_);
  return std::to_string(u_) + "+" + std::to_string(v_) + "*a";
}

Poly::Poly(const FieldCtx* K, std::vector<Fq> c) : K_(K), c_(std::move(c)) { trim(); }

Poly Poly::constant(const Fq& c) { return Poly(c.ctx(), {c}); }
Poly Poly::x(const FieldCtx* K) { return Poly(K, {Fq(K, 0), Fq(K, 1)}); }
Poly Poly::linear_root(const Fq& r) { return Poly(r.ctx(), {-r, Fq(r.ctx(), 1)}); }

Poly Poly::from_ints(const FieldCtx* K, const std::vector<i64>& c) {
  std::vector<Fq> v;
  for (i64 x : c) v.emplace_back(K, x);
  return Poly(K, v);
}

Poly Poly::from_mpz(const FieldCtx* K, const std::vector<mpz_class>& c) {
  std::vector<Fq> v;
  mpz_class pp = K->p;
  for (const auto& x : c) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
    v.emplace_back(K, r.get_si());
  }
  return Poly(K, v);
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (!K_ && !c_.empty()) K_ = c_[0].ctx();
}

Fq Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return Fq(K_, 0);
  return c_[i];
}

bool Poly::in_Fp() const {
  return std::all_of(c_.begin(), c_.end(), [](const Fq& x) { return x.in_Fp(); });
}

static const FieldCtx* join(const FieldCtx* a, const FieldCtx* b) {
  same_ctx(a, b);
  return a ? a : b;
}

Poly Poly::operator+(const Poly& o) const {
  const FieldCtx* K = join(K_, o.K_);
  std::vector<Fq> r(std::max(c_.size(), o.c_.size()), Fq(K, 0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(K, r);
}

Poly Poly::operator-(const Poly& o) const {
  const FieldCtx* K = join(K_, o.K_);
  std::vector<Fq> r(std::max(c_.size(), o.c_.size()), Fq(K, 0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Poly(K, r);
}

Poly Poly::operator*(const Poly& o) const {
  const FieldCtx* K = join(K_, o.K_);
  if (c_.empty() || o.c_.empty()) return Poly(K);
  std::vector<Fq> r(c_.size() + o.c_.size() - 1, Fq(K, 0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return Poly(K, r);
}

Poly Poly::operator*(const Fq& s) const {
  std::vector<Fq> r = c_;
  for (auto& x : r) x *= s;
  return Poly(join(K_, s.ctx()), r);
}

std::pair<Poly, Poly> Poly::divmod(const Poly& m) const {
  if (m.is_zero()) throw Error(Errc::Singular, "polynomial division by zero");
  const FieldCtx* K = join(K_, m.K_);
  if (degree() < m.degree()) return {Poly(K), *this};
  std::vector<Fq> r = c_;
  std::vector<Fq> q(r.size() - m.c_.size() + 1, Fq(K, 0));
  const Fq li = m.lead().inv();
  const int dm = m.degree();
  for (int i = degree(); i >= dm; --i) {
    if (r[i].is_zero()) continue;
    Fq t = r[i] * li;
    q[i - dm] = t;
    for (int j = 0; j <= dm; ++j) r[i - dm + j] -= t * m.c_[j];
  }
  return {Poly(K, q), Poly(K, r)};
}

Poly Poly::operator%(const Poly& m) const { return divmod(m).second; }
Poly Poly::operator/(const Poly& m) const { return divmod(m).first; }

Fq Poly::eval(const Fq& x) const {
  Fq r(join(K_, x.ctx()), 0);
  for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inv();
}

Poly Poly::derivative() const {
  std::vector<Fq> r;
  for (int i = 1; i <= degree(); ++i) r.push_back(c_[i] * i);
  return Poly(K_, r);
}

Poly Poly::frob() const {
  std::vector<Fq> r = c_;
  for (auto& x : r) x = x.frob();
  return Poly(K_, r);
}

Poly Poly::compose(const Poly& g) const {
  Poly r(join(K_, g.K_));
  for (int i = degree(); i >= 0; --i) r = r * g + constant(c_[i]);
  return r;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Fq& x = c_[i];
    if (x.is_zero()) continue;
    std::string cs = x.str();
    bool compound = !x.in_Fp() && x.u() != 0;
    if (!x.in_Fp() && x.u() == 0) cs = std::to_string(x.v()) + "*a";
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!x.is_one()) out += (compound ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  same_ctx(f.ctx(), g.ctx());
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<Poly, Poly> poly_gcdinv(const Poly& f, const Poly& m) {
  const FieldCtx* K = join(f.ctx(), m.ctx());
  Poly r0 = m, r1 = f % m;
  Poly s0(K), s1 = Poly::constant(Fq(K, 1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  Fq li = r0.lead().inv();
  return {r0 * li, (s0 * li) % m};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, const mpz_class& e, const Poly& m) {
  const FieldCtx* K = join(base.ctx(), m.ctx());
  Poly r = Poly::constant(Fq(K, 1)) % m;
  Poly b = base % m;
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
  }
  return r;
}

namespace {

mpz_class field_size(const FieldCtx* K, bool ext) {
  mpz_class Q = K->p;
  if (ext) Q *= K->p;
  return Q;
}

// Product of the distinct linear factors of f over F_Q.
Poly linear_part(const Poly& f, const mpz_class& Q) {
  const FieldCtx* K = f.ctx();
  Poly X = Poly::x(K);
  Poly h = powmod(X, Q, f);
  return poly_gcd(f, h - X);
}

void split_linear(const Poly& g, const mpz_class& Q, std::mt19937_64& rng, std::vector<Fq>& out) {
  const FieldCtx* K = g.ctx();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-(g.coeff(0) / g.coeff(1)));
    return;
  }
  const mpz_class e = (Q - 1) / 2;
  const bool ext = Q != K->p;
  std::uniform_int_distribution<i64> d(0, K->p - 1);
  for (;;) {
    Fq delta(K, d(rng), ext ? d(rng) : 0);
    Poly t = powmod(Poly(K, {delta, Fq(K, 1)}), e, g) - Poly::constant(Fq(K, 1));
    Poly h = poly_gcd(g, t);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, Q, rng, out);
      split_linear(g / h, Q, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Fq> distinct_roots(const Poly& f, bool in_extension) {
  if (f.degree() < 1) throw Error(Errc::BadN, "root finding needs a nonconstant polynomial");
  const FieldCtx* K = f.ctx();
  const mpz_class Q = field_size(K, in_extension);
  Poly g = linear_part(f.monic(), Q);
  std::vector<Fq> out;
  std::mt19937_64 rng(0x5eed);
  split_linear(g, Q, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Fq> roots(const Poly& f, bool in_extension) {
  std::vector<Fq> out;
  for (const Fq& r : distinct_roots(f, in_extension)) {
    Poly rest = f;
    Poly lin = Poly::linear_root(r);
    for (;;) {
      auto [q, rem] = rest.divmod(lin);
      if (!rem.is_zero()) break;
      out.push_back(r);
      rest = q;
    }
  }
  return out;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
  const FieldCtx* K = f.ctx();
  std::vector<Fq> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(K->p)) c.push_back(f.coeff(i).frob());
  return Poly(K, c);
}

void squarefree(const Poly& f, int mult, std::vector<Factor>& out) {
  const FieldCtx* K = f.ctx();
  Poly one = Poly::constant(Fq(K, 1));
  Poly c = poly_gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = poly_gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree(pth_root(c.monic()), mult * static_cast<int>(K->p), out);
}

void equal_degree(const Poly& g, int d, const mpz_class& Q, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const FieldCtx* K = g.ctx();
  const bool ext = Q != K->p;
  std::uniform_int_distribution<i64> dist(0, K->p - 1);
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), Q.get_mpz_t(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    std::vector<Fq> cs;
    for (int i = 0; i < g.degree(); ++i) cs.emplace_back(K, dist(rng), ext ? dist(rng) : 0);
    Poly a(K, cs);
    if (a.degree() < 1) continue;
    Poly h = poly_gcd(g, powmod(a, e, g) - Poly::constant(Fq(K, 1)));
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, Q, rng, out);
      equal_degree(g / h, d, Q, rng, out);
      return;
    }
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (!(a.coeff(i) == b.coeff(i))) return a.coeff(i) < b.coeff(i);
  return false;
}

}  // namespace

std::vector<Factor> factor(const Poly& f, bool in_extension, std::uint64_t seed) {
  if (f.degree() < 1) return {};
  const FieldCtx* K = f.ctx();
  const mpz_class Q = field_size(K, in_extension);
  std::mt19937_64 rng(seed);
  std::vector<Factor> sqf;
  squarefree(f.monic(), 1, sqf);
  std::vector<Factor> out;
  for (const auto& [g0, m] : sqf) {
    Poly g = g0;
    Poly X = Poly::x(K);
    Poly h = X;
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = powmod(h, Q, g);
      Poly gd = poly_gcd(g, h - X);
      if (gd.degree() > 0) {
        std::vector<Poly> parts;
        equal_degree(gd, d, Q, rng, parts);
        for (auto& p : parts) out.push_back({p, m});
        g = g / gd;
        h = h % g;
      }
    }
    if (g.degree() > 0) out.push_back({g.monic(), m});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.f == b.f) return a.mult < b.mult;
    return poly_less(a.f, b.f);
  });
  return out;
}

std::string factor_str(const std::vector<Factor>& fs, const std::string& var) {
  std::string out;
  for (const auto& [f, m] : fs) {
    std::string s = f.str(var);
    out += f.degree() == 1 && f.coeff(0).is_zero() ? var : "(" + s + ")";
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out.empty() ? "1" : out;
}

}  // namespace eichler
