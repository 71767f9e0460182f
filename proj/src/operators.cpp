#include "magic/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace magic {

const char *space_name(TensorSpace s) {
  switch (s) {
  case TensorSpace::Zh: return "Zh";
  case TensorSpace::Hplus: return "H+";
  case TensorSpace::Hminus: return "H-";
  }
  return "?";
}

// ---- TensorBasisVector ------------------------------------------------------

TensorBasisVector TensorBasisVector::product(const BasisVector &f1, const BasisVector &f2,
                                             TensorSpace s) {
  TensorBasisVector t;
  t.space = s;
  for (const auto &[a, ca] : f1.entries())
    for (const auto &[b, cb] : f2.entries()) t.add(a, b, ca * cb);
  return t;
}

void TensorBasisVector::add(const CoeffIndex &a, const CoeffIndex &b, cplx c) {
  if (c == 0.0) return;
  terms[{a, b}] += c;
}

TensorBasisVector TensorBasisVector::operator+(const TensorBasisVector &o) const {
  TensorBasisVector r = *this;
  for (const auto &[k, c] : o.terms) r.add(k.first, k.second, c);
  return r;
}

TensorBasisVector TensorBasisVector::operator-(const TensorBasisVector &o) const {
  return *this + o * -1.0;
}

TensorBasisVector TensorBasisVector::operator*(cplx s) const {
  TensorBasisVector r;
  r.space = space;
  for (const auto &[k, c] : terms) r.add(k.first, k.second, c * s);
  return r;
}

double TensorBasisVector::max_abs() const {
  double m = 0.0;
  for (const auto &[k, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

double TensorBasisVector::norm2() const {
  double s = 0.0;
  for (const auto &[k, c] : terms) s += std::norm(c);
  return std::sqrt(s);
}

cplx TensorBasisVector::eval(const HMatrix &X1, const HMatrix &X2) const {
  cplx s = 0.0;
  for (const auto &[k, c] : terms)
    s += c * BasisVector::unit(k.first).eval(X1) * BasisVector::unit(k.second).eval(X2);
  return s;
}

void TensorBasisVector::prune(double drop) {
  std::erase_if(terms, [drop](const auto &kv) { return std::abs(kv.second) <= drop; });
}

bool TensorBasisVector::labels_fit() const {
  auto fits = [this](const CoeffIndex &i) {
    if (space == TensorSpace::Hplus) return i.k == 0;
    if (space == TensorSpace::Hminus) return i.k == -1 - i.twoL;
    return true;
  };
  const double tiny = 1e-12 * max_abs();
  for (const auto &[k, c] : terms)
    if (std::abs(c) > tiny && (!fits(k.first) || !fits(k.second))) return false;
  return true;
}

std::pair<int, int> TensorBasisVector::degree_range() const {
  int lo = 1 << 20, hi = -(1 << 20);
  for (const auto &[k, c] : terms) {
    const int d = k.first.degree() + k.second.degree();
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

BasisVector box(const BasisVector &v) {
  BasisVector r;
  for (const auto &[idx, c] : v.entries()) {
    const double f = 4.0 * idx.k * (idx.k + idx.twoL + 1);
    if (f != 0.0) r.add(CoeffIndex{idx.k - 1, idx.twoL, idx.twoN, idx.twoM}, f * c);
  }
  return r;
}

TensorBasisVector box(const TensorBasisVector &v, int side) {
  TensorBasisVector r;
  r.space = TensorSpace::Zh;
  for (const auto &[key, c] : v.terms) {
    const CoeffIndex &i = side == 0 ? key.first : key.second;
    const double f = 4.0 * i.k * (i.k + i.twoL + 1);
    if (f == 0.0) continue;
    CoeffIndex j{i.k - 1, i.twoL, i.twoN, i.twoM};
    if (side == 0)
      r.add(j, key.second, f * c);
    else
      r.add(key.first, j, f * c);
  }
  return r;
}

double harmonic_defect(const TensorBasisVector &T) {
  const double m = T.max_abs();
  if (m == 0.0) return 0.0;
  return std::max(box(T, 0).max_abs(), box(T, 1).max_abs()) / m;
}

BasisVector degt_over_n(const BasisVector &phi) {
  BasisVector r;
  for (const auto &[idx, c] : degt(phi).entries())
    r.add(CoeffIndex{idx.k - 1, idx.twoL, idx.twoN, idx.twoM}, c);
  return r;
}

BasisVector transform_basis(const BasisVector &f, const HMatrix &A, const HMatrix &B, cplx scale) {
  BasisVector r;
  const cplx nab = norm(A) * norm(B);
  for (const auto &[key, blk] : f.blocks) {
    const int tl = key.second, d = tl + 1;
    auto ta = tau_matrix(tl, A), tb = tau_matrix(tl, B);
    // C' = ta^T C tb^T
    std::vector<cplx> tmp(blk.size(), 0.0);
    for (int p = 0; p < d; ++p)
      for (int m = 0; m < d; ++m) {
        cplx s = 0.0;
        for (int n = 0; n < d; ++n) s += ta[static_cast<size_t>(n) * d + p] * blk[static_cast<size_t>(n) * d + m];
        tmp[static_cast<size_t>(p) * d + m] = s;
      }
    auto &out = r.block(key.first, tl);
    const cplx f0 = scale * std::pow(nab, key.first);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        cplx s = 0.0;
        for (int m = 0; m < d; ++m) s += tmp[static_cast<size_t>(p) * d + m] * tb[static_cast<size_t>(q) * d + m];
        out[static_cast<size_t>(p) * d + q] += f0 * s;
      }
  }
  return r;
}

// ---- operator engine --------------------------------------------------------

namespace {

enum class Sweep { outside_in, inside_out };

std::vector<std::vector<TensorBasisVector>> run_operator(const BoxDiagram &d,
                                                         const std::vector<BasisVector> &in1,
                                                         const std::vector<BasisVector> &in2,
                                                         Sweep sweep, int Lmax) {
  const int n = d.loops;
  const int lab1 = kExternals + n, lab2 = lab1 + 1;
  if (lab2 >= kSlots) throw Error(ErrorKind::InvalidArgument, "too many loops for the engine");
  const int s1 = sweep == Sweep::outside_in ? Z1 : W1;
  const int s2 = sweep == Sweep::outside_in ? Z2 : W2;
  const int o1 = sweep == Sweep::outside_in ? W1 : Z1;
  const int o2 = sweep == Sweep::outside_in ? W2 : Z2;

  Network net;
  auto labelled = [](int slot, int lab, const std::vector<BasisVector> &in) {
    MultiPoly p;
    for (size_t a = 0; a < in.size(); ++a)
      for (const auto &[idx, c] : in[a].entries()) {
        SlotKey k{};
        k[slot] = idx;
        k[lab] = CoeffIndex{static_cast<int>(a) + 1, 0, 0, 0};
        p.add(k, c);
      }
    return p;
  };
  net.factors.push_back(labelled(s1, lab1, in1));
  net.factors.push_back(labelled(s2, lab2, in2));
  for (auto [u, v] : d.solid) {
    if (d.precedes(u, v))
      net.edges.push_back({u, v, true});
    else if (d.precedes(v, u))
      net.edges.push_back({v, u, true});
    else
      throw Error(ErrorKind::UnsupportedTopology, "solid edge between incomparable vertices");
  }
  for (auto [u, v] : d.dashed) net.edges.push_back({u, v, false});

  const CycleAssignment a = assign_radii(d);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a.r[x] < a.r[y]; });
  if (sweep == Sweep::outside_in) std::reverse(order.begin(), order.end());

  std::vector<std::vector<TensorBasisVector>> out(in1.size(),
                                                  std::vector<TensorBasisVector>(in2.size()));
  const TensorSpace space = sweep == Sweep::outside_in ? TensorSpace::Hplus : TensorSpace::Hminus;
  for (auto &row : out)
    for (auto &t : row) t.space = space;

  net.eliminate(s1, 2 * Lmax);
  net.eliminate(s2, 2 * Lmax);
  for (int k : order) net.eliminate(kExternals + k, 2 * Lmax);
  const MultiPoly res = net.result();
  for (const auto &[key, c] : res.terms) {
    const int a1 = key[lab1].k - 1, a2 = key[lab2].k - 1;
    if (a1 < 0 || a2 < 0) continue;  // cannot happen for nonzero inputs
    out[static_cast<size_t>(a1)][static_cast<size_t>(a2)].add(key[o1], key[o2], c);
  }
  return out;
}

std::vector<BasisVector> split_side(const TensorBasisVector &F, int side,
                                    std::vector<CoeffIndex> &labels) {
  labels.clear();
  for (const auto &[k, c] : F.terms) {
    const CoeffIndex &i = side == 0 ? k.first : k.second;
    if (std::find(labels.begin(), labels.end(), i) == labels.end()) labels.push_back(i);
  }
  std::vector<BasisVector> v;
  for (const auto &i : labels) v.push_back(BasisVector::unit(i));
  return v;
}

// sum over the terms of F of c * table[a][b]
TensorBasisVector apply_table(const TensorBasisVector &F, const BoxDiagram &d, Sweep sweep,
                              int Lmax, const std::function<BasisVector(const BasisVector &)> &pre) {
  std::vector<CoeffIndex> l1, l2;
  auto in1 = split_side(F, 0, l1), in2 = split_side(F, 1, l2);
  for (auto &x : in1) x = pre(x);
  for (auto &x : in2) x = pre(x);
  auto table = run_operator(d, in1, in2, sweep, Lmax);
  TensorBasisVector r;
  r.space = sweep == Sweep::outside_in ? TensorSpace::Hplus : TensorSpace::Hminus;
  for (const auto &[k, c] : F.terms) {
    const size_t a = std::find(l1.begin(), l1.end(), k.first) - l1.begin();
    const size_t b = std::find(l2.begin(), l2.end(), k.second) - l2.begin();
    r = r + table[a][b] * c;
  }
  return r;
}

}  // namespace

std::vector<std::vector<TensorBasisVector>> lbar_table(const BoxDiagram &d,
                                                       const std::vector<BasisVector> &in1,
                                                       const std::vector<BasisVector> &in2,
                                                       int Lmax) {
  return run_operator(d, in1, in2, Sweep::outside_in, Lmax);
}

TensorBasisVector Lbar(const BoxDiagram &d, const BasisVector &f1, const BasisVector &f2,
                       int Lmax) {
  return run_operator(d, {f1}, {f2}, Sweep::outside_in, Lmax)[0][0];
}

TensorBasisVector Lbar(const BoxDiagram &d, const TensorBasisVector &F, int Lmax) {
  return apply_table(F, d, Sweep::outside_in, Lmax, [](const BasisVector &x) { return x; });
}

TensorBasisVector L(const BoxDiagram &d, const BasisVector &phi1, const BasisVector &phi2,
                    int Lmax) {
  return Lbar(d, degt_over_n(phi1), degt_over_n(phi2), Lmax);
}

TensorBasisVector L(const BoxDiagram &d, const TensorBasisVector &Phi, int Lmax) {
  return apply_table(Phi, d, Sweep::outside_in, Lmax, degt_over_n);
}

TensorBasisVector Lacute(const BoxDiagram &d, const BasisVector &phi1, const BasisVector &phi2,
                         int Lmax) {
  return run_operator(d, {degt_over_n(phi1)}, {degt_over_n(phi2)}, Sweep::inside_out, Lmax)[0][0];
}

cplx tensor_pairing(const TensorBasisVector &T, const BasisVector &g1, const BasisVector &g2) {
  cplx s = 0.0;
  for (const auto &[k, c] : T.terms)
    s += c * pairing(BasisVector::unit(k.first), g1) * pairing(BasisVector::unit(k.second), g2);
  return s;
}

double duality_check(const BoxDiagram &d, const BasisVector &f1, const BasisVector &f2,
                     const BasisVector &phi1, const BasisVector &phi2, int Lmax) {
  const cplx lhs = tensor_pairing(Lbar(d, f1, f2, Lmax), degt_over_n(phi1), degt_over_n(phi2));
  const cplx rhs = tensor_pairing(Lacute(d, phi1, phi2, Lmax), f1, f2);
  return std::abs(lhs - rhs);
}

double equivariance_check(const BoxDiagram &d, const GroupElement &h, const BasisVector &f1,
                          const BasisVector &f2, int Lmax) {
  if (h.b.max_abs() > 1e-12 || h.c.max_abs() > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "h must be block diagonal");
  // h^{-1} = diag(A, D): Z -> A Z D^{-1}
  const HMatrix A = h.ai, Dinv = h.d;
  const cplx nA = norm(A), nD = norm(h.di);
  const BasisVector g1 = transform_basis(f1, A, Dinv, nA / (nD * nD));
  const BasisVector g2 = transform_basis(f2, A, Dinv, nA * nA / nD);
  const TensorBasisVector lhs = Lbar(d, g1, g2, Lmax);
  const TensorBasisVector base = Lbar(d, f1, f2, Lmax);
  TensorBasisVector rhs;
  for (const auto &[k, c] : base.terms) {
    const BasisVector a = transform_basis(BasisVector::unit(k.first), A, Dinv, 1.0 / nD);
    const BasisVector b = transform_basis(BasisVector::unit(k.second), A, Dinv, nA);
    rhs = rhs + TensorBasisVector::product(a, b) * c;
  }
  return (lhs - rhs).max_abs();
}

ScalarAction scalar_action_check(const BoxDiagram &d, int k, int Lmax) {
  std::vector<TensorBasisVector> gens;
  const BasisVector one = BasisVector::unit({0, 0, 0, 0});
  if (k == 1) {
    gens.push_back(TensorBasisVector::product(one, one, TensorSpace::Hplus));
  } else if (k == 2) {
    for (int n : {-1, 1})
      for (int m : {-1, 1}) {
        const BasisVector z = BasisVector::unit({0, 1, n, m});
        gens.push_back(TensorBasisVector::product(z, one, TensorSpace::Hplus) -
                       TensorBasisVector::product(one, z, TensorSpace::Hplus));
      }
  } else {
    throw Error(ErrorKind::InvalidArgument, "k must be 1 or 2");
  }
  std::vector<TensorBasisVector> outs;
  for (const auto &g : gens) outs.push_back(L(d, g, Lmax));
  cplx num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < gens.size(); ++i)
    for (const auto &[key, c] : gens[i].terms) {
      auto it = outs[i].terms.find(key);
      if (it != outs[i].terms.end()) num += std::conj(c) * it->second;
      den += std::norm(c);
    }
  ScalarAction r;
  r.mu = num / den;
  double res = 0.0;
  for (size_t i = 0; i < gens.size(); ++i) res += std::pow((outs[i] - gens[i] * r.mu).norm2(), 2);
  r.residual = std::sqrt(res / den);
  return r;
}

} // namespace magic
