#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "eichler/ff.hpp"

namespace eichler {

// Classical modular polynomial, stored as monomials X^i Y^j with i >= j.
struct ModularPolynomial {
  struct Term {
    int i = 0, j = 0;
    mpz_class c;
  };
  int ell = 0;
  std::vector<Term> terms;
};

// Phi_2 is built in; Phi_3 is read from phi3.txt (see set_phi3_path).
const ModularPolynomial& phi_poly(int ell);
void set_phi3_path(const std::string& path);
ModularPolynomial parse_modular_polynomial(int ell, const std::string& text);
// Structural checks plus Phi(j(E), j(E/G)) = 0 on Velu isogenies; empty string when valid.
std::string validate_modular_polynomial(const ModularPolynomial& phi);

Fq phi_eval(const ModularPolynomial& phi, const Fq& x, const Fq& y);
Poly phi_in_y(const ModularPolynomial& phi, const Fq& x);
// Multiplicity of j2 as a root of Phi_ell(j1, Y).
int isogeny_count(const Fq& j1, const Fq& j2, int ell);

}  // namespace eichler
