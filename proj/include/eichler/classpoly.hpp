#pragma once

#include <gmpxx.h>

#include <vector>

#include "eichler/ff.hpp"
#include "eichler/numth.hpp"

namespace eichler {

struct ClassPolynomial {
  i64 D = 0;
  std::vector<mpz_class> coeffs;  // ascending, monic
  long precision_bits = 0;        // precision that produced the exact rounding

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// H_D by evaluating j at the CM points of the reduced primitive forms of disc D.
// precision_bits = 0 picks the precision from the size estimate.
ClassPolynomial hilbert(i64 D, long precision_bits = 0);
Poly hilbert_mod(i64 D, i64 p);
long hilbert_precision_estimate(i64 D);

// Res(f, g) for monic f, computed as det of multiplication-by-g on Z[X]/(f).
mpz_class resultant_monic(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g);
mpz_class resultant(i64 D1, i64 D2);
int valuation(const mpz_class& n, i64 p);
int resultant_vp(i64 D1, i64 D2, i64 p);

}  // namespace eichler
