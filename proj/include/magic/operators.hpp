#pragma once

#include <map>
#include <utility>
#include <vector>

#include "magic/diagrams.hpp"
#include "magic/network.hpp"

namespace magic {

enum class TensorSpace { Zh, Hplus, Hminus };
const char *space_name(TensorSpace s);

// Finite sum of c * e_a(X1) e_b(X2) over basis labels a, b.
struct TensorBasisVector {
  std::map<std::pair<CoeffIndex, CoeffIndex>, cplx> terms;
  TensorSpace space = TensorSpace::Zh;

  static TensorBasisVector product(const BasisVector &f1, const BasisVector &f2,
                                   TensorSpace s = TensorSpace::Zh);
  void add(const CoeffIndex &a, const CoeffIndex &b, cplx c);
  TensorBasisVector operator+(const TensorBasisVector &o) const;
  TensorBasisVector operator-(const TensorBasisVector &o) const;
  TensorBasisVector operator*(cplx s) const;
  double max_abs() const;
  double norm2() const;
  cplx eval(const HMatrix &X1, const HMatrix &X2) const;
  void prune(double drop);
  // labels allowed by the space flag: H+ needs k = 0, H- needs k = -1 - 2l;
  // rounding-level coefficients are ignored
  bool labels_fit() const;
  // range of total degree over the terms
  std::pair<int, int> degree_range() const;
};

// numeric box = 4 (d11 d22 - d12 d21) on the basis: N^k t^l -> 4k(k+2l+1) N^{k-1} t^l
BasisVector box(const BasisVector &v);
TensorBasisVector box(const TensorBasisVector &v, int side);

// phi -> degt(phi) / N
BasisVector degt_over_n(const BasisVector &phi);
// scale * f(A Z B)
BasisVector transform_basis(const BasisVector &f, const HMatrix &A, const HMatrix &B, cplx scale);

// L-bar on every pair (in1[a], in2[b]); Z1, Z2 are eliminated on outer cycles
// followed by the internals from the outside in.
std::vector<std::vector<TensorBasisVector>> lbar_table(const BoxDiagram &d,
                                                       const std::vector<BasisVector> &in1,
                                                       const std::vector<BasisVector> &in2,
                                                       int Lmax = 12);
TensorBasisVector Lbar(const BoxDiagram &d, const BasisVector &f1, const BasisVector &f2,
                       int Lmax = 12);
TensorBasisVector Lbar(const BoxDiagram &d, const TensorBasisVector &F, int Lmax = 12);
// L(phi1 x phi2) = Lbar(degt phi1 / N x degt phi2 / N)
TensorBasisVector L(const BoxDiagram &d, const BasisVector &phi1, const BasisVector &phi2,
                    int Lmax = 12);
TensorBasisVector L(const BoxDiagram &d, const TensorBasisVector &Phi, int Lmax = 12);
// W1, W2 eliminated on inner cycles against degt phi / N, internals from the inside out
TensorBasisVector Lacute(const BoxDiagram &d, const BasisVector &phi1, const BasisVector &phi2,
                         int Lmax = 12);

// normalized pairing of a tensor with g1 x g2
cplx tensor_pairing(const TensorBasisVector &T, const BasisVector &g1, const BasisVector &g2);

// |<Lbar(f1 x f2), degt phi/N> - <Lacute(phi1 x phi2), f1 x f2>|
double duality_check(const BoxDiagram &d, const BasisVector &f1, const BasisVector &f2,
                     const BasisVector &phi1, const BasisVector &phi2, int Lmax = 12);

// max coefficient of Lbar(w(h)(f1 x f2)) - (pi0 x pi0)(h) Lbar(f1 x f2), h = diag(A', D')
double equivariance_check(const BoxDiagram &d, const GroupElement &h, const BasisVector &f1,
                          const BasisVector &f2, int Lmax = 12);

struct ScalarAction {
  cplx mu{};
  double residual = 0.0;
};
// k = 1: generator 1 x 1; k = 2: z_ij x 1 - 1 x z_ij, i, j = 1, 2
ScalarAction scalar_action_check(const BoxDiagram &d, int k, int Lmax = 12);

// max over both sides of |box T| relative to |T|; 0 for the zero tensor
double harmonic_defect(const TensorBasisVector &T);

} // namespace magic
