#pragma once

#include <map>
#include <vector>

#include "magic/exact.hpp"

namespace magic {

// Basis label N^k t^l_{n m}, half-integers stored doubled.
struct CoeffIndex {
  int k = 0;
  int twoL = 0;
  int twoN = 0;
  int twoM = 0;

  bool valid() const;
  int degree() const { return 2 * k + twoL; }
  auto operator<=>(const CoeffIndex &) const = default;
};

using ExactBasisVector = std::map<CoeffIndex, GaussRational>;

// coefficient of s^{l-n} in (s z11 + z21)^{l-m} (s z12 + z22)^{l+m}
LaurentPoly tcoeff_poly(int twoL, int twoN, int twoM);
LaurentPoly basis_poly(const CoeffIndex &idx);
LaurentPoly to_poly(const ExactBasisVector &v);

struct InverseRelation {
  GaussRational c;
  CoeffIndex target;  // k = -2l, (l, -n, -m)
};
// t^l_{m n}(Z^{-1}) = c N(Z)^{-2l} t^l_{-n,-m}(Z)
InverseRelation tcoeff_inverse_relation(int twoL, int twoM, int twoN);
// closed form of the constant above: (-1)^{m-n} C(2l, l-m) / C(2l, l-n)
GaussRational inverse_constant_exact(int twoL, int twoM, int twoN);
double inverse_constant(int twoL, int twoM, int twoN);

// exact decomposition f = sum c N^k t^l_{n m}
ExactBasisVector harmonic_decompose(const LaurentPoly &f);

ExactBasisVector degt(const ExactBasisVector &v);

struct SubspaceFlags {
  bool zh_plus = false;    // k >= 0
  bool zh2_minus = false;  // k <= -(2l+3)
  bool i2_minus = false;   // k <= -2
  bool i2_plus = false;    // k >= -(2l+1)
  bool j2 = false;         // -(2l+1) <= k <= -2
};
SubspaceFlags classify_subspace(const CoeffIndex &idx);

} // namespace magic
