#include "eichler/classpoly.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>

#include "eichler/error.hpp"
#include "eichler/qform.hpp"

namespace eichler {

namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_ui(x_, 0, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(x_); }
  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

 private:
  mpfr_t x_;
};

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t prec) : re(prec), im(prec) {}
};

// z = x * y; scratch reused to keep allocations out of the inner loops.
struct CxOps {
  mpfr_prec_t prec;
  Real t1, t2;
  explicit CxOps(mpfr_prec_t pr) : prec(pr), t1(pr), t2(pr) {}

  void mul(Cx& z, const Cx& x, const Cx& y) {
    mpfr_mul(t1.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_fma(z.im.get(), x.im.get(), y.re.get(), t2.get(), MPFR_RNDN);
    mpfr_set(z.re.get(), t1.get(), MPFR_RNDN);
  }

  void div(Cx& z, const Cx& x, const Cx& y) {
    Real den(prec), a(prec), b(prec);
    mpfr_sqr(den.get(), y.re.get(), MPFR_RNDN);
    mpfr_fma(den.get(), y.im.get(), y.im.get(), den.get(), MPFR_RNDN);
    mpfr_mul(a.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_fma(a.get(), x.im.get(), y.im.get(), a.get(), MPFR_RNDN);
    mpfr_mul(b.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_sub(b.get(), b.get(), t1.get(), MPFR_RNDN);
    mpfr_div(z.re.get(), a.get(), den.get(), MPFR_RNDN);
    mpfr_div(z.im.get(), b.get(), den.get(), MPFR_RNDN);
  }

  // Euler product prod (1 - x^n) through the pentagonal number series.
  void euler(Cx& out, const Cx& x, double log2_abs_x) {
    mpfr_set_ui(out.re.get(), 1, MPFR_RNDN);
    mpfr_set_ui(out.im.get(), 0, MPFR_RNDN);
    Cx xk(prec), a(prec), b(prec), step(prec);
    mpfr_set_ui(xk.re.get(), 1, MPFR_RNDN);  // x^k
    mpfr_set(a.re.get(), xk.re.get(), MPFR_RNDN);  // x^{k(3k-1)/2}
    for (long k = 1;; ++k) {
      // a <- a * x^{3k-2}, i.e. a * x^{3(k-1)} * x
      Cx cube(prec);
      mul(cube, xk, xk);
      mul(cube, cube, xk);
      mul(a, a, cube);
      mul(a, a, x);
      mul(xk, xk, x);
      mul(b, a, xk);  // x^{k(3k+1)/2}
      const double e1 = static_cast<double>(k) * (3 * k - 1) / 2;
      if (-e1 * log2_abs_x > static_cast<double>(prec) + 16) break;
      auto* op = (k % 2) ? mpfr_sub : mpfr_add;
      op(out.re.get(), out.re.get(), a.re.get(), MPFR_RNDN);
      op(out.im.get(), out.im.get(), a.im.get(), MPFR_RNDN);
      op(out.re.get(), out.re.get(), b.re.get(), MPFR_RNDN);
      op(out.im.get(), out.im.get(), b.im.get(), MPFR_RNDN);
    }
  }
};

// j((-b + sqrt(D)) / 2a) as (256 f + 1)^3 / f with f = q prod (1 + q^n)^24.
Cx j_value(const BQForm& f, mpfr_prec_t prec) {
  const i64 D = f.disc();
  CxOps ops(prec);
  Real pi(prec), r(prec), theta(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_si(r.get(), -D, MPFR_RNDN);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  mpfr_mul(r.get(), r.get(), pi.get(), MPFR_RNDN);
  mpfr_div_si(r.get(), r.get(), f.a, MPFR_RNDN);
  mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);  // |q|
  mpfr_mul_si(theta.get(), pi.get(), -f.b, MPFR_RNDN);
  mpfr_div_si(theta.get(), theta.get(), f.a, MPFR_RNDN);
  Cx q(prec);
  mpfr_sin_cos(q.im.get(), q.re.get(), theta.get(), MPFR_RNDN);
  mpfr_mul(q.re.get(), q.re.get(), r.get(), MPFR_RNDN);
  mpfr_mul(q.im.get(), q.im.get(), r.get(), MPFR_RNDN);
  const double log2q = -M_PI * std::sqrt(static_cast<double>(-D)) / static_cast<double>(f.a) / M_LN2;

  Cx q2(prec), e1(prec), e2(prec), ratio(prec);
  ops.mul(q2, q, q);
  ops.euler(e1, q, log2q);
  ops.euler(e2, q2, 2 * log2q);
  ops.div(ratio, e2, e1);
  Cx r2(prec), r4(prec), r8(prec), r16(prec), r24(prec);
  ops.mul(r2, ratio, ratio);
  ops.mul(r4, r2, r2);
  ops.mul(r8, r4, r4);
  ops.mul(r16, r8, r8);
  ops.mul(r24, r16, r8);
  Cx phi(prec);
  ops.mul(phi, q, r24);
  Cx num(prec), cube(prec), j(prec);
  mpfr_mul_ui(num.re.get(), phi.re.get(), 256, MPFR_RNDN);
  mpfr_add_ui(num.re.get(), num.re.get(), 1, MPFR_RNDN);
  mpfr_mul_ui(num.im.get(), phi.im.get(), 256, MPFR_RNDN);
  ops.mul(cube, num, num);
  ops.mul(cube, cube, num);
  ops.div(j, cube, phi);
  return j;
}

// Multiplies a real polynomial (ascending) by a monic factor (ascending, leading 1 implied).
void mul_monic(std::vector<Real>& poly, const std::vector<Real>& low, mpfr_prec_t prec) {
  const std::size_t k = low.size();
  std::vector<Real> out(poly.size() + k, Real(prec));
  Real t(prec);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    mpfr_add(out[i + k].get(), out[i + k].get(), poly[i].get(), MPFR_RNDN);
    for (std::size_t m = 0; m < k; ++m) {
      mpfr_mul(t.get(), poly[i].get(), low[m].get(), MPFR_RNDN);
      mpfr_add(out[i + m].get(), out[i + m].get(), t.get(), MPFR_RNDN);
    }
  }
  poly = std::move(out);
}

bool is_discriminant(i64 D) { return D < 0 && (mod(D, 4) == 0 || mod(D, 4) == 1); }

std::mutex cache_mu;
std::map<i64, ClassPolynomial>& cache() {
  static std::map<i64, ClassPolynomial> c;
  return c;
}
constexpr i64 kCacheLimit = 4000;

}  // namespace

long hilbert_precision_estimate(i64 D) {
  double bits = 0;
  const auto& forms = class_group(D);
  for (const auto& f : forms) bits += M_PI * std::sqrt(static_cast<double>(-D)) / static_cast<double>(f.a) / M_LN2;
  return static_cast<long>(bits) + 2 * static_cast<long>(forms.size()) + 64;
}

ClassPolynomial hilbert(i64 D, long precision_bits) {
  if (!is_discriminant(D)) throw Error(Errc::BadDisc, "D = " + std::to_string(D) + " is not a negative discriminant");
  if (precision_bits == 0 && -D <= kCacheLimit) {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache().find(D);
    if (it != cache().end()) return it->second;
  }
  const auto& forms = class_group(D);
  long prec = precision_bits > 0 ? precision_bits : hilbert_precision_estimate(D);
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    std::vector<Real> poly;
    poly.emplace_back(prec);
    mpfr_set_ui(poly[0].get(), 1, MPFR_RNDN);
    for (const auto& f : forms) {
      if (f.b < 0) continue;
      Cx j = j_value(f, prec);
      if (f.ambiguous()) {
        std::vector<Real> low{j.re};
        mpfr_neg(low[0].get(), low[0].get(), MPFR_RNDN);
        mul_monic(poly, low, prec);
      } else {
        std::vector<Real> low(2, Real(prec));
        mpfr_sqr(low[0].get(), j.re.get(), MPFR_RNDN);
        mpfr_fma(low[0].get(), j.im.get(), j.im.get(), low[0].get(), MPFR_RNDN);
        mpfr_mul_si(low[1].get(), j.re.get(), -2, MPFR_RNDN);
        mul_monic(poly, low, prec);
      }
    }
    ClassPolynomial out{D, {}, prec};
    bool ok = true;
    Real rounded(prec), diff(prec);
    for (auto& c : poly) {
      mpfr_rint(rounded.get(), c.get(), MPFR_RNDN);
      mpfr_sub(diff.get(), c.get(), rounded.get(), MPFR_RNDN);
      if (mpfr_cmp_d(diff.get(), 0.25) >= 0 || mpfr_cmp_d(diff.get(), -0.25) <= 0) {
        ok = false;
        break;
      }
      mpz_class z;
      mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
      out.coeffs.push_back(z);
    }
    if (!ok) continue;
    if (-D <= kCacheLimit) {
      std::lock_guard<std::mutex> lock(cache_mu);
      cache().emplace(D, out);
    }
    return out;
  }
  throw Error(Errc::PrecisionExhausted, "H_" + std::to_string(D) + " did not round cleanly");
}

Poly hilbert_mod(i64 D, i64 p) { return Poly::from_mpz(fp2_ctx(p), hilbert(D).coeffs); }

mpz_class resultant_monic(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 0 || f.back() != 1) throw Error(Errc::BadParams, "resultant_monic needs a monic first argument");
  if (n == 0) return 1;
  // Column k of M holds X^k * g mod f.
  std::vector<mpz_class> cur(g);
  auto reduce = [&](std::vector<mpz_class>& h) {
    for (int i = static_cast<int>(h.size()) - 1; i >= n; --i) {
      if (h[i] == 0) continue;
      mpz_class t = h[i];
      for (int k = 0; k <= n; ++k) h[i - n + k] -= t * f[k];
    }
    h.resize(n);
  };
  if (static_cast<int>(cur.size()) < n) cur.resize(n);
  reduce(cur);
  std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) M[i][k] = cur[i];
    cur.insert(cur.begin(), mpz_class(0));
    reduce(cur);
  }
  // Fraction-free Gaussian elimination.
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && M[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(M[piv], M[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

mpz_class resultant(i64 D1, i64 D2) {
  ClassPolynomial h1 = hilbert(D1), h2 = hilbert(D2);
  if (h1.degree() > h2.degree()) std::swap(h1, h2);
  return resultant_monic(h1.coeffs, h2.coeffs);
}

int valuation(const mpz_class& n, i64 p) {
  if (n == 0) throw Error(Errc::ResultantZero, "valuation of zero");
  mpz_class m = n, pp = p;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
    ++v;
  }
  return v;
}

int resultant_vp(i64 D1, i64 D2, i64 p) {
  if (D1 == D2) throw Error(Errc::ResultantZero, "D1 = D2");
  mpz_class r = resultant(D1, D2);
  if (r == 0) throw Error(Errc::ResultantZero, "H_" + std::to_string(D1) + " and H_" + std::to_string(D2) + " share a root");
  return valuation(r, p);
}

}  // namespace eichler
