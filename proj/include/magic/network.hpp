#pragma once

#include <array>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "magic/basis.hpp"

namespace magic {

// Slots 0..kExternals+loops-1 hold vertex variables; spare slots can carry
// input labels that never multiply against anything.
constexpr int kSlots = 12;
using SlotKey = std::array<CoeffIndex, kSlots>;

// Sparse element of the tensor product of Laurent polynomial spaces, one
// factor per slot, in the N^k t^l_{n m} basis.
class MultiPoly {
public:
  std::map<SlotKey, cplx> terms;

  static MultiPoly constant(cplx c);
  static MultiPoly from_basis(int slot, const BasisVector &v);
  void add(const SlotKey &key, cplx c);
  bool depends_on(int slot) const;
  // min and max of 2k + 2l over terms
  std::pair<int, int> degree_range(int slot) const;
  int max_twoL(int slot) const;
  double max_abs() const;
  void prune(double drop);
  MultiPoly operator+(const MultiPoly &o) const;
  MultiPoly operator*(cplx s) const;
  // all terms with slot == idx, with that slot reset to the constant
  MultiPoly slice(int slot, const CoeffIndex &idx) const;
  cplx eval(const std::vector<std::pair<int, HMatrix>> &at) const;
};

// Filter on the index landing in one slot, applied while multiplying.
struct SlotFilter {
  int slot = -1;
  std::function<bool(const CoeffIndex &)> keep;
};

MultiPoly multiply(const MultiPoly &a, const MultiPoly &b, const SlotFilter &f = {});

// 1/N(x_inner - x_outer), |inner| < |outer|, spins 2l <= twoLcap
MultiPoly solid_edge(int inner, int outer, int twoLcap);
// N(x_a - x_b)
MultiPoly dashed_edge(int a, int b);

struct NetEdge {
  int inner = 0, outer = 0;  // for dashed edges the two ends
  bool solid = true;
};

// Product of fixed factors and not yet expanded edges; variables are
// integrated out one at a time with the normalized cycle functional.
struct Network {
  std::vector<MultiPoly> factors;
  std::vector<NetEdge> edges;
  std::vector<int> cap_log;  // series cap used at each elimination

  // Series caps follow from homogeneity: the integrand in the slot must have
  // total degree -4, so when every pending solid edge expands the same way
  // the required spins are bounded. Mixed directions use twoLmax.
  void eliminate(int slot, int twoLmax);
  MultiPoly result() const;
};

} // namespace magic
