#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eichler {

using i64 = std::int64_t;
using u64 = std::uint64_t;

enum class Variant { Lambda, LambdaPrime };

const char* variant_name(Variant v);

// p > 3 prime, c prime with c < 3p/16. LambdaPrime needs cp = 3 mod 4.
struct PrimeParams {
  i64 p = 0;
  i64 c = 0;
  Variant variant = Variant::Lambda;

  i64 cp() const { return c * p; }
};

PrimeParams make_params(i64 p, i64 c, Variant v = Variant::Lambda);
// Like make_params but reports the violated condition instead of throwing.
std::optional<std::string> params_problem(i64 p, i64 c, Variant v);
bool lambda_prime_applies(i64 p, i64 c);

struct QRTriple {
  i64 q = 0;
  i64 r = 0;
  std::optional<i64> rprime;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
i64 mod(i64 a, i64 m);
i64 gcd(i64 a, i64 b);
// x with a*x = g (mod m) where g = gcd(a, m); returns (g, x, y) with a*x + m*y = g.
struct Egcd {
  i64 g, x, y;
};
Egcd egcd(i64 a, i64 b);
i64 isqrt(i64 n);
bool is_square(i64 n);

int kronecker(i64 a, i64 n);
std::optional<i64> sqrt_mod_prime(i64 a, i64 q);
i64 lift_sqrt_mod_4q(i64 r, i64 q, i64 cp);
bool is_prime(u64 n);
std::vector<i64> prime_factors(i64 n);  // distinct, ascending, by trial division

bool satisfies_eq1(const PrimeParams& params, i64 q);
std::vector<i64> find_q(const PrimeParams& params, i64 bound);
std::vector<std::pair<i64, i64>> represent(i64 a, i64 m);

}  // namespace eichler
