#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "magic/coeffs.hpp"

namespace magic {

// t^l_{n m}(Z) for all n, m; row-major with row index (2n + 2l)/2.
std::vector<cplx> tau_matrix(int twoL, const HMatrix &Z);

// Numeric element of the span of N^k t^l_{n m}, stored as dense
// (2l+1)x(2l+1) blocks keyed by (k, 2l).
class BasisVector {
public:
  using Key = std::pair<int, int>;
  using Block = std::vector<cplx>;

  std::map<Key, Block> blocks;

  static BasisVector unit(const CoeffIndex &idx, cplx c = 1.0);
  static BasisVector from_exact(const ExactBasisVector &v);

  Block &block(int k, int twoL);
  cplx get(const CoeffIndex &idx) const;
  void add(const CoeffIndex &idx, cplx c);

  BasisVector operator+(const BasisVector &o) const;
  BasisVector operator-(const BasisVector &o) const;
  BasisVector operator*(cplx s) const;
  BasisVector &operator+=(const BasisVector &o);

  cplx eval(const HMatrix &Z) const;
  double max_abs() const;
  int max_twoL() const;
  std::vector<std::pair<CoeffIndex, cplx>> entries(double drop = 0.0) const;
  void prune(double drop);
};

using KeepFn = std::function<bool(int k, int twoL)>;

// product via the Clebsch-Gordan split t^{l1} t^{l2} = sum_L N^{l1+l2-L} (...) t^L
BasisVector multiply(const BasisVector &a, const BasisVector &b, const KeepFn &keep = {});
BasisVector multiply_serial(const BasisVector &a, const BasisVector &b, const KeepFn &keep = {});

// coefficient of N^{(2l1+2l2-2L)/2} t^L_{n m} in t^{l1}_{n1 m1} t^{l2}_{n2 m2}
double product_coefficient(int twoL1, int twoN1, int twoM1, int twoL2, int twoN2, int twoM2,
                           int twoL, int twoN, int twoM);

// <N^k1 t^l_{n m}, N^k2 t^l_{-n,-m}> for k1 + k2 = -2 - 2l
double pairing_value(int twoL, int twoN, int twoM);

// (i/2pi^3) int f1 f2 dV from the orthogonality table
cplx pairing(const BasisVector &a, const BasisVector &b);
// (i/2pi^3) int f dV
cplx integrate(const BasisVector &a);
BasisVector degt(const BasisVector &v);

// 1/N(X - Y) expanded in X for X inside Y (|X Y^{-1}| < 1)
BasisVector outside_series(const HMatrix &Y, int twoLmax);
// 1/N(X - Y) expanded in X for Y inside X
BasisVector inside_series(const HMatrix &Y, int twoLmax);
// N(X - Y) as a function of X
BasisVector dashed_poly(const HMatrix &Y);

struct Expansion {
  BasisVector series;
  double inv_abs_norm_w = 0.0;
  int twoLmax = 0;
  // bound on the dropped terms for |Z W^{-1}| <= ratio
  double tail(double ratio) const;
};
// 1/N(Z - W) = N(W)^{-1} sum t^l_{n m}(Z) t^l_{m n}(W^{-1}), 2l <= 2 Lmax
Expansion expand_inv_norm(const HMatrix &W, int Lmax);

} // namespace magic
