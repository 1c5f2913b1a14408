#include "eichler/qform.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

#include "eichler/error.hpp"

namespace eichler {

namespace {

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 disc_delta(i64 D) { return D % 2 == 0 ? 0 : 1; }

void check_disc(i64 D) {
  if (D >= 0 || (mod(D, 4) != 0 && mod(D, 4) != 1)) {
    throw Error(Errc::BadDisc, "D = " + std::to_string(D));
  }
}

}  // namespace

bool BQForm::primitive() const { return gcd(gcd(a, b), ap) == 1; }

bool BQForm::reduced() const {
  if (!(-a < b && b <= a && a <= ap)) return false;
  if (a == ap && b < 0) return false;
  return true;
}

std::string BQForm::str() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(ap) + ")";
}

bool table_less(const BQForm& f, const BQForm& g) {
  i64 fb = f.b < 0 ? -f.b : f.b;
  i64 gb = g.b < 0 ? -g.b : g.b;
  if (f.a != g.a) return f.a < g.a;
  if (fb != gb) return fb < gb;
  if (f.b != g.b) return f.b > g.b;
  return f.ap < g.ap;
}

BQForm reduce(const BQForm& f) {
  i64 D = f.disc();
  if (D >= 0 || f.a <= 0) throw Error(Errc::NotNegativeDisc, f.str());
  if (!f.primitive()) throw Error(Errc::NotPrimitive, f.str());
  __int128 a = f.a, b = f.b, c = f.ap;
  for (;;) {
    if (!(-a < b && b <= a)) {
      // x -> x + k y brings b into (-a, a].
      i64 k = floor_div(static_cast<i64>(a - b), static_cast<i64>(2 * a));
      c = a * k * k + b * k + c;
      b = b + 2 * a * k;
    }
    if (a > c) {
      __int128 t = a;
      a = c;
      c = t;
      b = -b;
      continue;
    }
    if (a == c && b < 0) b = -b;
    break;
  }
  return BQForm{static_cast<i64>(a), static_cast<i64>(b), static_cast<i64>(c)};
}

BQForm identity_form(i64 D) {
  check_disc(D);
  if (mod(D, 4) == 0) return BQForm{1, 0, -D / 4};
  return BQForm{1, 1, (1 - D) / 4};
}

BQForm inverse(const BQForm& f) { return reduce(BQForm{f.a, -f.b, f.ap}); }

QuadIdeal form_to_ideal(const BQForm& f) {
  if (!f.primitive()) throw Error(Errc::NotProper, f.str());
  return QuadIdeal{f.a, f.b, f.disc()};
}

BQForm ideal_to_form(const QuadIdeal& I) {
  __int128 num = (__int128)I.b * I.b - I.D;
  if (I.n <= 0 || num % (4 * (__int128)I.n) != 0) {
    throw Error(Errc::NotProper, "[" + std::to_string(I.n) + ", b=" + std::to_string(I.b) + "]");
  }
  BQForm f{I.n, I.b, static_cast<i64>(num / (4 * I.n))};
  if (!f.primitive()) throw Error(Errc::NotProper, f.str());
  return f;
}

IdealProduct ideal_multiply(const QuadIdeal& I, const QuadIdeal& J) {
  if (I.D != J.D) throw Error(Errc::DiscMismatch, std::to_string(I.D) + " vs " + std::to_string(J.D));
  const i64 D = I.D;
  const i64 delta = disc_delta(D);
  const i64 k = (D - delta) / 4;  // tau^2 = delta*tau + k
  using V = std::pair<__int128, __int128>;
  auto gens = [&](const QuadIdeal& A) {
    return std::array<V, 2>{V{A.n, 0}, V{(-A.b - delta) / 2, 1}};
  };
  auto mul = [&](V u, V v) {
    return V{u.first * v.first + u.second * v.second * k,
             u.first * v.second + u.second * v.first + delta * u.second * v.second};
  };
  std::vector<V> rows;
  for (auto u : gens(I))
    for (auto v : gens(J)) rows.push_back(mul(u, v));
  // Hermite normal form of the 4x2 integer matrix: rows (A,0), (B,C).
  for (std::size_t i = 1; i < rows.size(); ++i) {
    V& p = rows[0];
    V& r = rows[i];
    while (r.second != 0) {
      __int128 t = p.second / r.second;
      p.first -= t * r.first;
      p.second -= t * r.second;
      std::swap(p, r);
    }
  }
  if (rows[0].second < 0) rows[0] = V{-rows[0].first, -rows[0].second};
  __int128 A = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    __int128 x = rows[i].first < 0 ? -rows[i].first : rows[i].first;
    while (x != 0) {
      __int128 t = A % x;
      A = x;
      x = t;
    }
  }
  __int128 C = rows[0].second;
  __int128 B = rows[0].first % A;
  if (B < 0) B += A;
  if (C == 0 || A % C != 0 || B % C != 0) throw Error(Errc::NotProper, "ideal product is not invertible");
  i64 n = static_cast<i64>(A / C);
  i64 bprime = static_cast<i64>(-(2 * (B / C) + delta));
  bprime = mod(bprime, 2 * n);
  if (bprime > n) bprime -= 2 * n;
  return IdealProduct{static_cast<i64>(C), QuadIdeal{n, bprime, D}};
}

BQForm compose(const BQForm& f, const BQForm& g) {
  if (f.disc() != g.disc()) throw Error(Errc::DiscMismatch, f.str() + " vs " + g.str());
  auto prod = ideal_multiply(form_to_ideal(f), form_to_ideal(g));
  return reduce(ideal_to_form(prod.ideal));
}

BQForm power(const BQForm& f, i64 n) {
  BQForm base = n < 0 ? inverse(f) : reduce(f);
  if (n < 0) n = -n;
  BQForm acc = identity_form(f.disc());
  while (n) {
    if (n & 1) acc = compose(acc, base);
    base = compose(base, base);
    n >>= 1;
  }
  return acc;
}

const std::vector<BQForm>& class_group(i64 D) {
  check_disc(D);
  static std::mutex mu;
  static std::map<i64, std::vector<BQForm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(D);
  if (it != cache.end()) return it->second;
  std::vector<BQForm> forms;
  for (i64 a = 1; 3 * a * a <= -D; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (mod(b - D, 2) != 0) continue;
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if ((a == c || a == b) && b < 0) continue;
      BQForm f{a, b, c};
      if (f.primitive()) forms.push_back(f);
    }
  }
  std::sort(forms.begin(), forms.end(), table_less);
  return cache.emplace(D, std::move(forms)).first->second;
}

i64 class_number(i64 D) { return static_cast<i64>(class_group(D).size()); }

i64 form_order(const BQForm& f) {
  BQForm r = reduce(f);
  BQForm e = identity_form(f.disc());
  BQForm acc = r;
  i64 h = class_number(f.disc());
  for (i64 k = 1; k <= h; ++k) {
    if (acc == e) return k;
    acc = compose(acc, r);
  }
  throw Error(Errc::NotAnOrder, "form order exceeds the class number for " + f.str());
}

std::string Character::name() const {
  switch (kind) {
    case Odd: return "chi_" + std::to_string(prime);
    case Delta: return "delta";
    case Epsilon: return "epsilon";
    case DeltaEpsilon: return "delta*epsilon";
  }
  return "?";
}

int Character::eval(i64 m) const {
  auto delta = [](i64 x) { return mod(x, 4) == 1 ? 1 : -1; };
  auto eps = [](i64 x) {
    i64 r = mod(x, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  };
  switch (kind) {
    case Odd: return kronecker(m, prime);
    case Delta: return delta(m);
    case Epsilon: return eps(m);
    case DeltaEpsilon: return delta(m) * eps(m);
  }
  return 0;
}

std::vector<Character> assigned_characters(i64 D) {
  check_disc(D);
  std::vector<Character> out;
  for (i64 pr : prime_factors(D)) {
    if (pr != 2) out.push_back(Character{Character::Odd, pr});
  }
  if (mod(D, 4) == 0) {
    i64 n = -D / 4;
    switch (mod(n, 8)) {
      case 3: case 7: break;
      case 1: case 5: out.push_back({Character::Delta}); break;
      case 2: out.push_back({Character::DeltaEpsilon}); break;
      case 6: out.push_back({Character::Epsilon}); break;
      case 4: out.push_back({Character::Delta}); break;
      case 0:
        out.push_back({Character::Delta});
        out.push_back({Character::Epsilon});
        break;
    }
  }
  return out;
}

std::vector<int> genus_vector(i64 m, i64 D) {
  if (gcd(m, 2 * D) != 1) throw Error(Errc::NotCoprime, std::to_string(m) + " and 2D = " + std::to_string(2 * D));
  std::vector<int> out;
  for (const auto& ch : assigned_characters(D)) out.push_back(ch.eval(m));
  return out;
}

std::vector<int> genus_of_form(const BQForm& f) {
  const i64 D = f.disc();
  auto try_at = [&](i64 x, i64 y) -> std::optional<std::vector<int>> {
    if (gcd(x, y) != 1) return std::nullopt;
    i64 m = f.eval(x, y);
    if (m > 0 && gcd(m, 2 * D) == 1) return genus_vector(m, D);
    return std::nullopt;
  };
  for (auto [x, y] : {std::pair<i64, i64>{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}}) {
    if (auto v = try_at(x, y)) return *v;
  }
  for (i64 s = 2; s < 1000; ++s) {
    for (i64 x = -s; x <= s; ++x) {
      for (i64 y = 1; y <= s; ++y) {
        if (std::max(x < 0 ? -x : x, y) != s) continue;
        if (auto v = try_at(x, y)) return *v;
      }
    }
  }
  throw Error(Errc::NotCoprime, "no value coprime to 2D for " + f.str());
}

std::vector<int> lambda_vector(const PrimeParams& params, i64 m) {
  std::vector<int> out;
  out.push_back(kronecker(m, params.p));
  if (params.c == 2) {
    i64 r = mod(m, 8);
    out.push_back((r == 1 || r == 7) ? 1 : -1);
  } else {
    out.push_back(kronecker(m, params.c));
  }
  if (params.variant == Variant::Lambda) out.push_back(mod(m, 4) == 1 ? 1 : -1);
  return out;
}

i64 genus_disc(const PrimeParams& params) {
  return params.variant == Variant::Lambda ? -16 * params.cp() : -params.cp();
}

std::vector<BQForm> genus_class(const PrimeParams& params, i64 q) {
  if (!satisfies_eq1(params, q)) throw Error(Errc::BadQ, "q = " + std::to_string(q) + " fails the congruence conditions");
  const i64 D = genus_disc(params);
  auto target = genus_vector(q, D);
  std::vector<BQForm> out;
  for (const auto& f : class_group(D)) {
    if (genus_of_form(f) == target) out.push_back(f);
  }
  return out;
}

AmbiguousReport ambiguous_in_genus(const PrimeParams& params, i64 q) {
  AmbiguousReport rep;
  for (const auto& f : genus_class(params, q)) {
    if (f.ambiguous()) rep.forms.push_back(f);
  }
  rep.count = static_cast<int>(rep.forms.size());
  return rep;
}

std::vector<std::pair<i64, i64>> small_values(const BQForm& f, i64 bound) {
  std::vector<std::pair<i64, i64>> out;
  const i64 D = f.disc();
  const i64 absD = -D;
  i64 ymax = isqrt(static_cast<i64>((__int128)4 * f.a * bound / absD)) + 1;
  for (i64 y = 0; y <= ymax; ++y) {
    __int128 disc = (__int128)D * y * y + (__int128)4 * f.a * bound;
    if (disc < 0) continue;
    i64 s = isqrt(static_cast<i64>(disc));
    i64 lo = floor_div(-f.b * y - s, 2 * f.a) - 1;
    i64 hi = floor_div(-f.b * y + s, 2 * f.a) + 1;
    for (i64 x = lo; x <= hi; ++x) {
      if (y == 0 && x <= 0) continue;
      __int128 v = (__int128)f.a * x * x + (__int128)f.b * x * y + (__int128)f.ap * y * y;
      if (v <= bound) out.emplace_back(x, y);
    }
  }
  return out;
}

std::optional<i64> represented_prime(const BQForm& f, const PrimeParams& params, i64 bound) {
  std::optional<i64> best;
  for (auto [x, y] : small_values(f, bound)) {
    i64 v = f.eval(x, y);
    if ((!best || v < *best) && satisfies_eq1(params, v)) best = v;
  }
  return best;
}

BQForm prime_splitting_form(i64 ell, const PrimeParams& params) {
  const i64 cp = params.cp();
  auto not_split = [&](const std::string& why) {
    return Error(Errc::NotSplit, "ell = " + std::to_string(ell) + ": " + why);
  };
  if (!is_prime(static_cast<u64>(ell))) throw not_split("not prime");
  if (ell == params.c || ell == params.p) throw not_split("ramified");
  if (params.variant == Variant::LambdaPrime) {
    if (kronecker(-cp, ell) != 1) throw not_split("(-cp/ell) != 1");
    if (ell == 2) return BQForm{2, 1, (1 + cp) / 8};
    i64 r = *sqrt_mod_prime(-cp, ell);
    i64 b = (r % 2 == 1) ? r : ell - r;
    return BQForm{ell, b, (b * b + cp) / (4 * ell)};
  }
  if (ell == 2) {
    if (mod(cp, 4) != 1) throw not_split("2 needs cp = 1 (mod 4) here");
    return BQForm{8, -4, (cp + 1) / 2};
  }
  if (kronecker(-cp, ell) != 1) throw not_split("(-cp/ell) != 1");
  i64 b = *sqrt_mod_prime(-cp, ell);
  return BQForm{ell, 4 * b, (4 * b * b + 4 * cp) / ell};
}

BQForm isogeny_action(const BQForm& f, const BQForm& g) {
  if (f.disc() != g.disc()) throw Error(Errc::DiscMismatch, f.str() + " vs " + g.str());
  return compose(compose(f, g), g);
}

}  // namespace eichler
