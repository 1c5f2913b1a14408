#include "eichler/numth.hpp"

#include <cmath>
#include <string>

#include "eichler/error.hpp"

namespace eichler {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::BadParams: return "BAD_PARAMS";
    case Errc::NoLift: return "NO_LIFT";
    case Errc::NotPrimitive: return "NOT_PRIMITIVE";
    case Errc::NotNegativeDisc: return "NOT_NEGATIVE_DISC";
    case Errc::DiscMismatch: return "DISC_MISMATCH";
    case Errc::BadDisc: return "BAD_DISC";
    case Errc::NotCoprime: return "NOT_COPRIME";
    case Errc::BadQ: return "BAD_Q";
    case Errc::NotProper: return "NOT_PROPER";
    case Errc::NotSplit: return "NOT_SPLIT";
    case Errc::AlgebraMismatch: return "ALGEBRA_MISMATCH";
    case Errc::NotAnOrder: return "NOT_AN_ORDER";
    case Errc::DegenerateBasis: return "DEGENERATE_BASIS";
    case Errc::NotSublattice: return "NOT_SUBLATTICE";
    case Errc::Unlabeled: return "UNLABELED";
    case Errc::CtxMismatch: return "CTX_MISMATCH";
    case Errc::PrecisionExhausted: return "PRECISION_EXHAUSTED";
    case Errc::ResultantZero: return "RESULTANT_ZERO";
    case Errc::Singular: return "SINGULAR";
    case Errc::PTooLarge: return "P_TOO_LARGE";
    case Errc::BadN: return "BAD_N";
    case Errc::InvalidKernel: return "INVALID_KERNEL";
    case Errc::UnsupportedEll: return "UNSUPPORTED_ELL";
    case Errc::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

const char* variant_name(Variant v) { return v == Variant::Lambda ? "lambda" : "lambda-prime"; }

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((unsigned __int128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Egcd egcd(i64 a, i64 b) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i64 t = a / b;
    i64 r = a - t * b;
    a = b;
    b = r;
    i64 xs = x0 - t * x1;
    x0 = x1;
    x1 = xs;
    i64 ys = y0 - t * y1;
    y0 = y1;
    y1 = ys;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

i64 isqrt(i64 n) {
  if (n <= 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (__int128)r * r > n) --r;
  while ((__int128)(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    i64 am8 = mod(a, 8);
    if ((v & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  // Jacobi symbol (a/n), n odd positive.
  i64 x = mod(a, n);
  i64 m = n;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      i64 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

std::optional<i64> sqrt_mod_prime(i64 a, i64 q) {
  u64 uq = static_cast<u64>(q);
  u64 ua = static_cast<u64>(mod(a, q));
  if (ua == 0) return 0;
  if (q == 2) return static_cast<i64>(ua);
  if (powmod(ua, (uq - 1) / 2, uq) != 1) return std::nullopt;
  u64 x;
  if (q % 4 == 3) {
    x = powmod(ua, (uq + 1) / 4, uq);
  } else {
    u64 s = uq - 1;
    int e = 0;
    while ((s & 1) == 0) {
      s >>= 1;
      ++e;
    }
    u64 z = 2;
    while (powmod(z, (uq - 1) / 2, uq) != uq - 1) ++z;
    u64 c = powmod(z, s, uq);
    x = powmod(ua, (s + 1) / 2, uq);
    u64 t = powmod(ua, s, uq);
    int m = e;
    while (t != 1) {
      int i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, uq);
        ++i;
      }
      u64 b = c;
      for (int k = 0; k < m - i - 1; ++k) b = mulmod(b, b, uq);
      x = mulmod(x, b, uq);
      c = mulmod(b, b, uq);
      t = mulmod(t, c, uq);
      m = i;
    }
  }
  i64 r = static_cast<i64>(x);
  return std::min(r, q - r);
}

i64 lift_sqrt_mod_4q(i64 r, i64 q, i64 cp) {
  if (mod(cp, 4) != 3) throw Error(Errc::NoLift, "cp = " + std::to_string(cp) + " is not 3 mod 4");
  i64 best = -1;
  for (i64 cand : {r, q - r, r + q, 2 * q - r}) {
    i64 c = mod(cand, 2 * q);
    if (c == 0) continue;
    if (mod((__int128)c * c % (4 * q) + cp, 4 * q) == 0 && (best < 0 || c < best)) best = c;
  }
  if (best < 0) throw Error(Errc::NoLift, "no lift of r = " + std::to_string(r) + " modulo 4q");
  return best;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  if (n < 0) n = -n;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::string> params_problem(i64 p, i64 c, Variant v) {
  if (p <= 3 || !is_prime(static_cast<u64>(p))) return "p must be a prime > 3";
  if (c < 2 || !is_prime(static_cast<u64>(c))) return "c must be prime";
  if (c == p) return "c must differ from p";
  if (16 * c >= 3 * p) return "c must satisfy c < 3p/16";
  if (v == Variant::LambdaPrime && mod(c * p, 4) != 3) return "the lambda-prime variant needs cp = 3 (mod 4)";
  return std::nullopt;
}

PrimeParams make_params(i64 p, i64 c, Variant v) {
  if (auto why = params_problem(p, c, v)) {
    throw Error(Errc::BadParams, *why + " (p=" + std::to_string(p) + ", c=" + std::to_string(c) + ")");
  }
  return PrimeParams{p, c, v};
}

bool lambda_prime_applies(i64 p, i64 c) { return mod(c * p, 4) == 3; }

bool satisfies_eq1(const PrimeParams& params, i64 q) {
  if (q < 3 || !is_prime(static_cast<u64>(q))) return false;
  if (q == params.p || q == params.c) return false;
  if (kronecker(params.p, q) != -1) return false;
  if (params.c == 2) return q % 8 == 7;
  return q % 8 == 3 && kronecker(params.c, q) == 1;
}

std::vector<i64> find_q(const PrimeParams& params, i64 bound) {
  std::vector<i64> out;
  for (i64 q = 3; q <= bound; q += 2) {
    if (satisfies_eq1(params, q)) out.push_back(q);
  }
  return out;
}

std::vector<std::pair<i64, i64>> represent(i64 a, i64 m) {
  std::vector<std::pair<i64, i64>> out;
  if (a <= 0 || m <= 0) return out;
  for (i64 y = 0; a * y * y <= m; ++y) {
    i64 rest = m - a * y * y;
    if (!is_square(rest)) continue;
    i64 x = isqrt(rest);
    if (gcd(x, y) == 1) out.emplace_back(x, y);
  }
  return out;
}

}  // namespace eichler
