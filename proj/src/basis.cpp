#include "magic/basis.hpp"

#include <cmath>
#include <limits>
#include <mutex>

namespace magic {

std::vector<cplx> tau_matrix(int twoL, const HMatrix &Z) {
  const int d = twoL + 1;
  // U[A] = coefficients of (s z11 + z21)^A, V[B] = (s z12 + z22)^B
  std::vector<std::vector<cplx>> U(d), V(d);
  U[0] = {1.0};
  V[0] = {1.0};
  for (int p = 1; p < d; ++p) {
    U[p].assign(p + 1, 0.0);
    V[p].assign(p + 1, 0.0);
    for (int i = 0; i < p; ++i) {
      U[p][i] += U[p - 1][i] * Z.z21;
      U[p][i + 1] += U[p - 1][i] * Z.z11;
      V[p][i] += V[p - 1][i] * Z.z22;
      V[p][i + 1] += V[p - 1][i] * Z.z12;
    }
  }
  std::vector<cplx> t(static_cast<size_t>(d) * d, 0.0);
  for (int j = 0; j < d; ++j) {  // m index, m = j - l
    const int A = twoL - j, B = j;
    // coefficient of s^a with a = l - n = twoL - i
    for (int a = 0; a <= twoL; ++a) {
      cplx s = 0.0;
      for (int u = std::max(0, a - B); u <= std::min(a, A); ++u) s += U[A][u] * V[B][a - u];
      t[static_cast<size_t>(twoL - a) * d + j] = s;
    }
  }
  return t;
}

// ---- Clebsch-Gordan factors -------------------------------------------------

namespace {

struct CGBlock {
  int d1 = 0, d2 = 0;
  std::vector<double> alpha, beta;  // index i1 * d2 + i2
};

mpz_class fact(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpq_class racah_sum(int tj1, int tj2, int tJ, int tm1, int tm2) {
  const int a = (tj1 + tj2 - tJ) / 2;
  const int e1 = (tj1 - tm1) / 2, e2 = (tj2 + tm2) / 2;
  const int f1 = (tJ - tj2 + tm1) / 2, f2 = (tJ - tj1 - tm2) / 2;
  int lo = std::max({0, -f1, -f2});
  int hi = std::min({a, e1, e2});
  mpq_class s = 0;
  for (int k = lo; k <= hi; ++k) {
    mpz_class den = fact(k) * fact(a - k) * fact(e1 - k) * fact(e2 - k) * fact(f1 + k) * fact(f2 + k);
    mpq_class term(1, 1);
    term /= den;
    if (k % 2) s -= term;
    else s += term;
  }
  return s;
}

CGBlock build_cg(int tj1, int tj2, int tJ) {
  CGBlock b;
  b.d1 = tj1 + 1;
  b.d2 = tj2 + 1;
  b.alpha.assign(static_cast<size_t>(b.d1) * b.d2, 0.0);
  b.beta.assign(static_cast<size_t>(b.d1) * b.d2, 0.0);
  const int a = (tj1 + tj2 - tJ) / 2;
  mpq_class T = mpq_class(tJ + 1) * fact((tJ + tj1 - tj2) / 2) * fact((tJ - tj1 + tj2) / 2) * fact(a);
  T /= fact((tj1 + tj2 + tJ) / 2 + 1);
  for (int i1 = 0; i1 < b.d1; ++i1)
    for (int i2 = 0; i2 < b.d2; ++i2) {
      const int tm1 = 2 * i1 - tj1, tm2 = 2 * i2 - tj2, tM = tm1 + tm2;
      if (std::abs(tM) > tJ) continue;
      mpq_class S = racah_sum(tj1, tj2, tJ, tm1, tm2);
      mpq_class al = T * fact((tJ + tM) / 2) * fact((tJ - tM) / 2) * S;
      mpq_class be = fact((tj1 - tm1) / 2) * fact((tj1 + tm1) / 2) * fact((tj2 - tm2) / 2) *
                     fact((tj2 + tm2) / 2) * S;
      b.alpha[static_cast<size_t>(i1) * b.d2 + i2] = al.get_d();
      b.beta[static_cast<size_t>(i1) * b.d2 + i2] = be.get_d();
    }
  return b;
}

std::mutex cg_mutex;
std::map<std::array<int, 3>, CGBlock> cg_cache;

const CGBlock &cg_block(int tj1, int tj2, int tJ) {
  std::lock_guard<std::mutex> lock(cg_mutex);
  auto it = cg_cache.find({tj1, tj2, tJ});
  if (it != cg_cache.end()) return it->second;
  return cg_cache.emplace(std::array<int, 3>{tj1, tj2, tJ}, build_cg(tj1, tj2, tJ)).first->second;
}

} // namespace

double product_coefficient(int twoL1, int twoN1, int twoM1, int twoL2, int twoN2, int twoM2,
                           int twoL, int twoN, int twoM) {
  if (twoN1 + twoN2 != twoN || twoM1 + twoM2 != twoM) return 0.0;
  if (twoL > twoL1 + twoL2 || twoL < std::abs(twoL1 - twoL2) || (twoL1 + twoL2 - twoL) % 2)
    return 0.0;
  if (std::abs(twoN) > twoL || std::abs(twoM) > twoL) return 0.0;
  const CGBlock &b = cg_block(twoL1, twoL2, twoL);
  size_t in = static_cast<size_t>((twoN1 + twoL1) / 2) * b.d2 + (twoN2 + twoL2) / 2;
  size_t im = static_cast<size_t>((twoM1 + twoL1) / 2) * b.d2 + (twoM2 + twoL2) / 2;
  return b.alpha[in] * b.beta[im];
}

double pairing_value(int twoL, int twoN, int twoM) {
  // <N^k1 t_{n m}, N^k2 t_{-n,-m}> = 1 / ((2l+1) c(l, m, n))
  return 1.0 / ((twoL + 1) * inverse_constant(twoL, twoM, twoN));
}

// ---- BasisVector ------------------------------------------------------------

BasisVector BasisVector::unit(const CoeffIndex &idx, cplx c) {
  if (!idx.valid()) throw Error(ErrorKind::IndexOutOfRange, "invalid basis index");
  BasisVector v;
  v.add(idx, c);
  return v;
}

BasisVector BasisVector::from_exact(const ExactBasisVector &e) {
  BasisVector v;
  for (const auto &[idx, c] : e) v.add(idx, c.to_complex());
  return v;
}

BasisVector::Block &BasisVector::block(int k, int twoL) {
  auto it = blocks.find({k, twoL});
  if (it != blocks.end()) return it->second;
  return blocks.emplace(Key{k, twoL}, Block(static_cast<size_t>(twoL + 1) * (twoL + 1), 0.0))
      .first->second;
}

cplx BasisVector::get(const CoeffIndex &idx) const {
  auto it = blocks.find({idx.k, idx.twoL});
  if (it == blocks.end()) return 0.0;
  const int d = idx.twoL + 1;
  return it->second[static_cast<size_t>((idx.twoN + idx.twoL) / 2) * d + (idx.twoM + idx.twoL) / 2];
}

void BasisVector::add(const CoeffIndex &idx, cplx c) {
  const int d = idx.twoL + 1;
  block(idx.k, idx.twoL)[static_cast<size_t>((idx.twoN + idx.twoL) / 2) * d +
                         (idx.twoM + idx.twoL) / 2] += c;
}

BasisVector &BasisVector::operator+=(const BasisVector &o) {
  for (const auto &[key, b] : o.blocks) {
    Block &mine = block(key.first, key.second);
    for (size_t i = 0; i < b.size(); ++i) mine[i] += b[i];
  }
  return *this;
}

BasisVector BasisVector::operator+(const BasisVector &o) const {
  BasisVector r = *this;
  r += o;
  return r;
}

BasisVector BasisVector::operator-(const BasisVector &o) const { return *this + o * (-1.0); }

BasisVector BasisVector::operator*(cplx s) const {
  BasisVector r = *this;
  for (auto &[key, b] : r.blocks)
    for (auto &x : b) x *= s;
  return r;
}

cplx BasisVector::eval(const HMatrix &Z) const {
  const cplx n = norm(Z);
  std::map<int, std::vector<cplx>> taus;
  cplx s = 0.0;
  for (const auto &[key, b] : blocks) {
    auto it = taus.find(key.second);
    if (it == taus.end()) it = taus.emplace(key.second, tau_matrix(key.second, Z)).first;
    cplx acc = 0.0;
    for (size_t i = 0; i < b.size(); ++i) acc += b[i] * it->second[i];
    s += acc * std::pow(n, key.first);
  }
  return s;
}

double BasisVector::max_abs() const {
  double m = 0.0;
  for (const auto &[key, b] : blocks)
    for (const auto &x : b) m = std::max(m, std::abs(x));
  return m;
}

int BasisVector::max_twoL() const {
  int m = -1;
  for (const auto &[key, b] : blocks) m = std::max(m, key.second);
  return m;
}

std::vector<std::pair<CoeffIndex, cplx>> BasisVector::entries(double drop) const {
  std::vector<std::pair<CoeffIndex, cplx>> out;
  for (const auto &[key, b] : blocks) {
    const int tl = key.second, d = tl + 1;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        cplx c = b[static_cast<size_t>(i) * d + j];
        if (std::abs(c) > drop || (drop == 0.0 && c != 0.0))
          out.push_back({CoeffIndex{key.first, tl, 2 * i - tl, 2 * j - tl}, c});
      }
  }
  return out;
}

void BasisVector::prune(double drop) {
  for (auto it = blocks.begin(); it != blocks.end();) {
    double m = 0.0;
    for (const auto &x : it->second) m = std::max(m, std::abs(x));
    if (m <= drop) it = blocks.erase(it);
    else ++it;
  }
}

// ---- products ---------------------------------------------------------------

namespace {

struct ProductTask {
  const BasisVector::Block *a;
  const BasisVector::Block *b;
  int tj1, tj2, tJ;
};

void accumulate(const ProductTask &t, BasisVector::Block &out, std::vector<cplx> &scratch) {
  const CGBlock &cg = cg_block(t.tj1, t.tj2, t.tJ);
  const int d1 = t.tj1 + 1, d2 = t.tj2 + 1, dJ = t.tJ + 1;
  const int shift = (t.tj1 + t.tj2 - t.tJ) / 2;  // index offset: iJ = i1 + i2 - shift
  const auto &A = *t.a;
  const auto &B = *t.b;
  // contract the column indices: R[i1][i2][jJ]
  scratch.assign(static_cast<size_t>(d1) * d2 * dJ, 0.0);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2) {
      cplx *row = &scratch[(static_cast<size_t>(i1) * d2 + i2) * dJ];
      for (int j1 = 0; j1 < d1; ++j1) {
        const cplx a = A[static_cast<size_t>(i1) * d1 + j1];
        if (a == 0.0) continue;
        for (int j2 = 0; j2 < d2; ++j2) {
          const int jJ = j1 + j2 - shift;
          if (jJ < 0 || jJ >= dJ) continue;
          row[jJ] += a * B[static_cast<size_t>(i2) * d2 + j2] *
                     cg.beta[static_cast<size_t>(j1) * d2 + j2];
        }
      }
    }
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2) {
      const int iJ = i1 + i2 - shift;
      if (iJ < 0 || iJ >= dJ) continue;
      const double al = cg.alpha[static_cast<size_t>(i1) * d2 + i2];
      if (al == 0.0) continue;
      const cplx *row = &scratch[(static_cast<size_t>(i1) * d2 + i2) * dJ];
      cplx *dst = &out[static_cast<size_t>(iJ) * dJ];
      for (int jJ = 0; jJ < dJ; ++jJ) dst[jJ] += al * row[jJ];
    }
}

std::map<BasisVector::Key, std::vector<ProductTask>> plan(const BasisVector &a,
                                                          const BasisVector &b,
                                                          const KeepFn &keep) {
  std::map<BasisVector::Key, std::vector<ProductTask>> tasks;
  for (const auto &[ka, ba] : a.blocks)
    for (const auto &[kb, bb] : b.blocks) {
      const int tj1 = ka.second, tj2 = kb.second;
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        const int k = ka.first + kb.first + (tj1 + tj2 - tJ) / 2;
        if (keep && !keep(k, tJ)) continue;
        tasks[{k, tJ}].push_back({&ba, &bb, tj1, tj2, tJ});
      }
    }
  // warm the CG cache outside any parallel region
  for (const auto &[key, list] : tasks)
    for (const auto &t : list) cg_block(t.tj1, t.tj2, t.tJ);
  return tasks;
}

} // namespace

BasisVector multiply(const BasisVector &a, const BasisVector &b, const KeepFn &keep) {
  auto tasks = plan(a, b, keep);
  std::vector<BasisVector::Key> keys;
  for (const auto &[key, list] : tasks) keys.push_back(key);
  std::vector<BasisVector::Block> outs(keys.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < keys.size(); ++i) {
    const int d = keys[i].second + 1;
    outs[i].assign(static_cast<size_t>(d) * d, 0.0);
    std::vector<cplx> scratch;
    for (const auto &t : tasks.at(keys[i])) accumulate(t, outs[i], scratch);
  }
  BasisVector r;
  for (size_t i = 0; i < keys.size(); ++i) r.blocks.emplace(keys[i], std::move(outs[i]));
  return r;
}

BasisVector multiply_serial(const BasisVector &a, const BasisVector &b, const KeepFn &keep) {
  auto tasks = plan(a, b, keep);
  BasisVector r;
  std::vector<cplx> scratch;
  for (const auto &[key, list] : tasks) {
    auto &out = r.block(key.first, key.second);
    for (const auto &t : list) accumulate(t, out, scratch);
  }
  return r;
}

cplx pairing(const BasisVector &a, const BasisVector &b) {
  cplx s = 0.0;
  for (const auto &[ka, ba] : a.blocks) {
    const int tl = ka.second, d = tl + 1;
    auto it = b.blocks.find({-2 - tl - ka.first, tl});
    if (it == b.blocks.end()) continue;
    const auto &bb = it->second;
    cplx acc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double w = pairing_value(tl, 2 * i - tl, 2 * j - tl);
        acc += w * ba[static_cast<size_t>(i) * d + j] *
               bb[static_cast<size_t>(d - 1 - i) * d + (d - 1 - j)];
      }
    s += acc;
  }
  return s;
}

cplx integrate(const BasisVector &a) { return a.get(CoeffIndex{-2, 0, 0, 0}); }

BasisVector degt(const BasisVector &v) {
  BasisVector r = v;
  for (auto &[key, b] : r.blocks) {
    const double f = 2.0 * key.first + key.second + 1.0;
    for (auto &x : b) x *= f;
  }
  return r;
}

// ---- expansions -------------------------------------------------------------

BasisVector outside_series(const HMatrix &Y, int twoLmax) {
  const cplx n = norm(Y);
  if (std::abs(n) == 0.0) throw Error(ErrorKind::SingularW, "N(W) = 0");
  const HMatrix Yi = invert(Y);
  BasisVector s;
  for (int tl = 0; tl <= twoLmax; ++tl) {
    const int d = tl + 1;
    auto t = tau_matrix(tl, Yi);
    auto &b = s.block(0, tl);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        b[static_cast<size_t>(i) * d + j] = t[static_cast<size_t>(j) * d + i] / n;
  }
  return s;
}

BasisVector inside_series(const HMatrix &Y, int twoLmax) {
  BasisVector s;
  for (int tl = 0; tl <= twoLmax; ++tl) {
    const int d = tl + 1;
    auto t = tau_matrix(tl, Y);
    auto &b = s.block(-1 - tl, tl);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // t_{n m}(Y) c(l, m, n) lands on index (-n, -m)
        const double c = inverse_constant(tl, 2 * j - tl, 2 * i - tl);
        b[static_cast<size_t>(d - 1 - i) * d + (d - 1 - j)] = c * t[static_cast<size_t>(i) * d + j];
      }
  }
  return s;
}

BasisVector dashed_poly(const HMatrix &Y) {
  BasisVector s;
  s.add(CoeffIndex{1, 0, 0, 0}, 1.0);
  s.add(CoeffIndex{0, 0, 0, 0}, norm(Y));
  s.add(CoeffIndex{0, 1, -1, -1}, -Y.z22);
  s.add(CoeffIndex{0, 1, -1, 1}, Y.z21);
  s.add(CoeffIndex{0, 1, 1, -1}, Y.z12);
  s.add(CoeffIndex{0, 1, 1, 1}, -Y.z11);
  return s;
}

double Expansion::tail(double ratio) const {
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  const int next = twoLmax + 1;
  return inv_abs_norm_w * (next + 1) * std::pow(ratio, next) / ((1.0 - ratio) * (1.0 - ratio));
}

Expansion expand_inv_norm(const HMatrix &W, int Lmax) {
  const cplx n = norm(W);
  const double scale = std::norm(W.z11) + std::norm(W.z12) + std::norm(W.z21) + std::norm(W.z22);
  if (std::abs(n) <= 1e-14 * scale || n == 0.0) throw Error(ErrorKind::SingularW, "N(W) = 0");
  Expansion e;
  e.twoLmax = 2 * Lmax;
  e.series = outside_series(W, 2 * Lmax);
  e.inv_abs_norm_w = 1.0 / std::abs(n);
  return e;
}

} // namespace magic
