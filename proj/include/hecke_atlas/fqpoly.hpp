#pragma once

#include <vector>

#include "hecke_atlas/finite_field.hpp"

namespace atlas {

// Dense polynomial over the level-k field of a tower, ascending packed
// coefficients, no trailing zeros (zero polynomial = empty vector).
struct FqPoly {
  int k = 1;
  std::vector<fq_t> c;

  int degree() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  bool monic(const FieldTower& tw) const { return !c.empty() && c.back() == 1; }
  bool operator==(const FqPoly& o) const { return k == o.k && c == o.c; }
  bool operator<(const FqPoly& o) const;  // by degree, then coeffs lex
};

FqPoly fqpoly_trim(FqPoly a);
FqPoly fqpoly_x_minus(const FieldTower& tw, int k, fq_t a);
FqPoly fqpoly_mul(const FieldTower& tw, const FqPoly& a, const FqPoly& b);
// Division by a monic divisor; returns quotient, sets rem.
FqPoly fqpoly_divmod(const FieldTower& tw, const FqPoly& a, const FqPoly& d,
                     FqPoly* rem);
fq_t fqpoly_eval(const FieldTower& tw, const FqPoly& f, fq_t x);
// Evaluate f (coefficients at level k) at x living at level k*m, embedding
// the coefficients along the tower.
fq_t fqpoly_eval_ext(const FieldTower& tw, const FqPoly& f, int kext, fq_t x);

// All monic irreducible polynomials of degree d over the level-k field,
// sorted; cached per (tower, k, d). d <= 4.
const std::vector<FqPoly>& monic_irreducibles(const FieldTower& tw, int k, int d);

// Factor a monic polynomial into (irreducible, multiplicity) pairs,
// sorted by the irreducible factor.
std::vector<std::pair<FqPoly, int>> fqpoly_factor(const FieldTower& tw,
                                                  const FqPoly& f);

// A root of the monic irreducible f (degree d, coefficients at level k)
// in the level k*d field.
fq_t fqpoly_root_in_ext(const FieldTower& tw, const FqPoly& f);

// Minimal polynomial over the level-k field of an element at level kext
// (k | kext): product over the Frobenius orbit.
FqPoly minimal_poly(const FieldTower& tw, int k, int kext, fq_t beta);

}  // namespace atlas
