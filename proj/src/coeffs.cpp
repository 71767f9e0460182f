#include "magic/coeffs.hpp"

#include <mutex>

namespace magic {

bool CoeffIndex::valid() const {
  if (twoL < 0) return false;
  if (std::abs(twoN) > twoL || std::abs(twoM) > twoL) return false;
  return ((twoL - twoN) % 2 == 0) && ((twoL - twoM) % 2 == 0);
}

namespace {

mpz_class binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::mutex cache_mutex;
std::map<std::array<int, 3>, LaurentPoly> tcoeff_cache;

} // namespace

LaurentPoly tcoeff_poly(int twoL, int twoN, int twoM) {
  CoeffIndex idx{0, twoL, twoN, twoM};
  if (!idx.valid())
    throw Error(ErrorKind::IndexOutOfRange, "invalid matrix coefficient index");
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = tcoeff_cache.find({twoL, twoN, twoM});
    if (it != tcoeff_cache.end()) return it->second;
  }
  const int A = (twoL - twoM) / 2;  // l - m
  const int B = (twoL + twoM) / 2;  // l + m
  const int a = (twoL - twoN) / 2;  // l - n
  LaurentPoly r;
  for (int j = 0; j <= std::min(A, a); ++j) {
    if (a - j > B) continue;
    mpz_class c = binom(A, j) * binom(B, a - j);
    if (c == 0) continue;
    r.add_term(Monomial{{j, a - j, A - j, B - a + j, 0}}, GaussRational(mpq_class(c)));
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  tcoeff_cache.emplace(std::array<int, 3>{twoL, twoN, twoM}, r);
  return r;
}

LaurentPoly basis_poly(const CoeffIndex &idx) {
  return LaurentPoly::N_power(idx.k) * tcoeff_poly(idx.twoL, idx.twoN, idx.twoM);
}

LaurentPoly to_poly(const ExactBasisVector &v) {
  LaurentPoly r;
  for (const auto &[idx, c] : v) r = r + basis_poly(idx) * c;
  return r;
}

GaussRational inverse_constant_exact(int twoL, int twoM, int twoN) {
  mpq_class r(binom(twoL, (twoL - twoM) / 2), binom(twoL, (twoL - twoN) / 2));
  r.canonicalize();
  if (((twoM - twoN) / 2) % 2) r = -r;
  return GaussRational(r);
}

double inverse_constant(int twoL, int twoM, int twoN) {
  return inverse_constant_exact(twoL, twoM, twoN).re.get_d();
}

InverseRelation tcoeff_inverse_relation(int twoL, int twoM, int twoN) {
  // t_{mn}(Z^{-1}) = N^{-2l} t_{mn}(adj Z)
  LaurentPoly lhs = tcoeff_poly(twoL, twoM, twoN).adjugate_substitute();
  LaurentPoly rhs = tcoeff_poly(twoL, -twoN, -twoM);
  const auto &[mono, rc] = *rhs.terms().begin();
  auto it = lhs.terms().find(mono);
  if (it == lhs.terms().end())
    throw Error(ErrorKind::NotInSpan, "inverse relation: no matching monomial");
  GaussRational c = it->second / rc;
  if (!(lhs - rhs * c).is_zero())
    throw Error(ErrorKind::NotInSpan, "inverse relation: not proportional");
  return {c, CoeffIndex{-twoL, twoL, -twoN, -twoM}};
}

ExactBasisVector degt(const ExactBasisVector &v) {
  ExactBasisVector r;
  for (const auto &[idx, c] : v) {
    GaussRational f(idx.degree() + 1);
    GaussRational x = c * f;
    if (!x.is_zero()) r[idx] = x;
  }
  return r;
}

SubspaceFlags classify_subspace(const CoeffIndex &idx) {
  const int k = idx.k, t = idx.twoL;
  SubspaceFlags f;
  f.zh_plus = k >= 0;
  f.zh2_minus = k <= -(t + 3);
  f.i2_minus = k <= -2;
  f.i2_plus = k >= -(t + 1);
  f.j2 = k >= -(t + 1) && k <= -2;
  return f;
}

} // namespace magic

namespace magic {

namespace {

// Solve M x = b exactly; M is rows x cols, b complex. Returns false if the
// system has no solution.
bool solve_exact(std::vector<std::vector<mpq_class>> M, std::vector<GaussRational> b,
                 std::vector<GaussRational> &x) {
  const size_t rows = M.size(), cols = M.empty() ? 0 : M[0].size();
  std::vector<size_t> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    std::swap(b[p], b[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      mpq_class f = M[i][c] / M[r][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
      b[i] = b[i] - b[r] * GaussRational(f);
    }
    pivcol.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return false;
  x.assign(cols, GaussRational());
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = b[i] / GaussRational(M[i][pivcol[i]]);
  return true;
}

} // namespace

ExactBasisVector harmonic_decompose(const LaurentPoly &f) {
  const int P = f.max_p();
  LaurentPoly g = f * LaurentPoly::N_power(P);
  // group by total degree and the two row/column weights
  std::map<std::array<int, 3>, std::map<std::array<int, 4>, GaussRational>> groups;
  for (const auto &[m, c] : g.terms()) {
    if (m.e[4] != 0) throw Error(ErrorKind::NotInSpan, "non-polynomial remainder");
    int D = m.e[0] + m.e[1] + m.e[2] + m.e[3];
    groups[{D, m.e[0] + m.e[1], m.e[0] + m.e[2]}][{m.e[0], m.e[1], m.e[2], m.e[3]}] = c;
  }
  ExactBasisVector out;
  for (const auto &[key, coeffs] : groups) {
    const auto [D, r, c] = key;
    std::vector<CoeffIndex> unknowns;
    for (int j = 0; 2 * j <= D; ++j) {
      int twoL = D - 2 * j;
      CoeffIndex idx{j, twoL, twoL - 2 * (r - j), twoL - 2 * (c - j)};
      if (idx.valid()) unknowns.push_back(idx);
    }
    std::vector<std::array<int, 4>> monos;
    for (int a = std::max(0, r + c - D); a <= std::min(r, c); ++a)
      monos.push_back({a, r - a, c - a, D - r - c + a});
    std::vector<std::vector<mpq_class>> M(monos.size(), std::vector<mpq_class>(unknowns.size()));
    for (size_t col = 0; col < unknowns.size(); ++col) {
      LaurentPoly bp = basis_poly(unknowns[col]);
      for (const auto &[m, v] : bp.terms()) {
        std::array<int, 4> e{m.e[0], m.e[1], m.e[2], m.e[3]};
        for (size_t row = 0; row < monos.size(); ++row)
          if (monos[row] == e) M[row][col] = v.re;
      }
    }
    std::vector<GaussRational> b(monos.size());
    for (size_t row = 0; row < monos.size(); ++row) {
      auto it = coeffs.find(monos[row]);
      if (it != coeffs.end()) b[row] = it->second;
    }
    std::vector<GaussRational> x;
    if (!solve_exact(M, b, x)) throw Error(ErrorKind::NotInSpan, "residual nonzero");
    for (size_t col = 0; col < unknowns.size(); ++col) {
      if (x[col].is_zero()) continue;
      CoeffIndex idx = unknowns[col];
      idx.k -= P;
      out[idx] = x[col];
    }
  }
  return out;
}

} // namespace magic
