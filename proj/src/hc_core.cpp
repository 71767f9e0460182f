#include "magic/hc_core.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

namespace magic {

const char *error_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::NotInvertible: return "NotInvertible";
  case ErrorKind::ConformalPole: return "ConformalPole";
  case ErrorKind::GridTooCoarse: return "GridTooCoarse";
  case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorKind::NotHarmonic: return "NotHarmonic";
  case ErrorKind::SingularW: return "SingularW";
  case ErrorKind::NotInSpan: return "NotInSpan";
  case ErrorKind::SingularConfiguration: return "SingularConfiguration";
  case ErrorKind::DomainViolation: return "DomainViolation";
  case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
  case ErrorKind::UnsupportedTopology: return "UnsupportedTopology";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

const char *method_name(Method m) {
  switch (m) {
  case Method::quadrature: return "quad";
  case Method::montecarlo: return "mc";
  case Method::spectral: return "spectral";
  }
  return "?";
}

static const cplx I(0.0, 1.0);

HMatrix HMatrix::from_coords(const std::array<cplx, 4> &z) {
  return {z[0] - I * z[3], -I * z[1] - z[2], -I * z[1] + z[2], z[0] + I * z[3]};
}

std::array<cplx, 4> HMatrix::coords() const {
  return {0.5 * (z11 + z22), 0.5 * I * (z12 + z21), 0.5 * (z21 - z12),
          0.5 * I * (z11 - z22)};
}

HMatrix HMatrix::adjoint() const {
  return {std::conj(z11), std::conj(z21), std::conj(z12), std::conj(z22)};
}

double HMatrix::max_abs() const {
  return std::max({std::abs(z11), std::abs(z12), std::abs(z21), std::abs(z22)});
}

HMatrix invert(const HMatrix &Z) {
  cplx n = norm(Z);
  double scale = std::norm(Z.z11) + std::norm(Z.z12) + std::norm(Z.z21) + std::norm(Z.z22);
  if (n == 0.0 || std::abs(n) <= 1e-15 * scale)
    throw Error(ErrorKind::NotInvertible, "N(Z) vanishes");
  return HMatrix{Z.z22, -Z.z12, -Z.z21, Z.z11} * (1.0 / n);
}

std::array<double, 2> singular_values(const HMatrix &Z) {
  double tr = std::norm(Z.z11) + std::norm(Z.z12) + std::norm(Z.z21) + std::norm(Z.z22);
  double det = std::norm(norm(Z));
  double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  double big = 0.5 * (tr + disc);
  double small = big > 0.0 ? det / big : 0.0;
  return {std::sqrt(big), std::sqrt(small)};
}

double op_norm(const HMatrix &Z) { return singular_values(Z)[0]; }

namespace {

using M4 = Eigen::Matrix4cd;

M4 to_eigen(const GroupElement &h) {
  M4 m;
  const HMatrix *blk[2][2] = {{&h.a, &h.b}, {&h.c, &h.d}};
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      const HMatrix &B = *blk[bi][bj];
      m(2 * bi, 2 * bj) = B.z11;
      m(2 * bi, 2 * bj + 1) = B.z12;
      m(2 * bi + 1, 2 * bj) = B.z21;
      m(2 * bi + 1, 2 * bj + 1) = B.z22;
    }
  return m;
}

HMatrix block(const M4 &m, int bi, int bj) {
  return {m(2 * bi, 2 * bj), m(2 * bi, 2 * bj + 1), m(2 * bi + 1, 2 * bj),
          m(2 * bi + 1, 2 * bj + 1)};
}

GroupElement from_eigen(const M4 &m) {
  return GroupElement::from_blocks(block(m, 0, 0), block(m, 0, 1), block(m, 1, 0),
                                   block(m, 1, 1));
}

} // namespace

GroupElement GroupElement::from_blocks(const HMatrix &a, const HMatrix &b,
                                       const HMatrix &c, const HMatrix &d) {
  GroupElement h;
  h.a = a;
  h.b = b;
  h.c = c;
  h.d = d;
  M4 m = to_eigen(h);
  Eigen::FullPivLU<M4> lu(m);
  if (!lu.isInvertible())
    throw Error(ErrorKind::NotInvertible, "group element is singular");
  M4 inv = lu.inverse();
  h.ai = block(inv, 0, 0);
  h.bi = block(inv, 0, 1);
  h.ci = block(inv, 1, 0);
  h.di = block(inv, 1, 1);
  return h;
}

GroupElement GroupElement::identity() {
  HMatrix z{};
  return from_blocks(HMatrix::identity(), z, z, HMatrix::identity());
}

GroupElement GroupElement::swap() {
  HMatrix z{};
  return from_blocks(z, HMatrix::identity(), HMatrix::identity(), z);
}

GroupElement GroupElement::inverse() const { return from_blocks(ai, bi, ci, di); }

GroupElement GroupElement::operator*(const GroupElement &o) const {
  return from_eigen(to_eigen(*this) * to_eigen(o));
}

double GroupElement::u22_residual(double R) const {
  HMatrix bb = b * (1.0 / R), cc = c * R;
  HMatrix one = HMatrix::identity();
  double r1 = (a.adjoint() * a - one - cc.adjoint() * cc).max_abs();
  double r2 = (d.adjoint() * d - one - bb.adjoint() * bb).max_abs();
  double r3 = (a.adjoint() * bb - cc.adjoint() * d).max_abs();
  return std::max({r1, r2, r3});
}

HMatrix fractional_linear(const GroupElement &h, const HMatrix &Z) {
  HMatrix den = h.c * Z + h.d;
  cplx n = norm(den);
  if (std::abs(n) < 1e-14 * std::max(1.0, den.max_abs() * den.max_abs()))
    throw Error(ErrorKind::ConformalPole, "N(cZ+d) vanishes");
  return (h.a * Z + h.b) * invert(den);
}

HMatrix fractional_linear_alt(const GroupElement &h, const HMatrix &Z) {
  HMatrix left = h.ai - Z * h.ci;
  if (std::abs(norm(left)) < 1e-14 * std::max(1.0, left.max_abs() * left.max_abs()))
    throw Error(ErrorKind::ConformalPole, "N(a' - Zc') vanishes");
  return invert(left) * (Z * h.di - h.bi);
}

bool in_domain(const HMatrix &Z, double R, Side sign, double tol) {
  auto s = singular_values(Z);
  double hi = s[0] * s[0], lo = s[1] * s[1], r2 = R * R;
  if (sign == Side::plus) return hi < r2 * (1.0 - tol);
  return lo > r2 * (1.0 + tol);
}

std::array<double, 4> hopf_point(double eta, double xi1, double xi2) {
  double ce = std::cos(eta), se = std::sin(eta);
  return {ce * std::cos(xi1), se * std::sin(xi2), se * std::cos(xi2), ce * std::sin(xi1)};
}

HMatrix CyclePoint::embed() const {
  HMatrix q = HMatrix::from_coords({s3[0], s3[1], s3[2], s3[3]});
  return q * (R * std::exp(I * psi));
}

CyclePoint CyclePoint::from_hmatrix(const HMatrix &Z) {
  CyclePoint p;
  p.R = std::sqrt(std::abs(norm(Z)));
  double psi = 0.5 * std::arg(norm(Z));
  if (psi < 0.0) psi += kPi;
  if (psi >= kPi) psi -= kPi;
  p.psi = psi;
  HMatrix q = Z * (std::exp(-I * psi) / p.R);
  auto c = q.coords();
  for (int k = 0; k < 4; ++k) p.s3[k] = c[k].real();
  return p;
}

std::pair<HMatrix, cplx> cycle_point_and_weight(const CyclePoint &p) {
  double R2 = p.R * p.R;
  return {p.embed(), -I * R2 * R2 * std::exp(4.0 * I * p.psi)};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  // Golub-Welsch
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
  return {x, w};
}

CycleRule make_cycle_rule(double R, const GridSpec &g) {
  if (g.periodic < 2 || g.gauss < 1)
    throw Error(ErrorKind::InvalidArgument, "grid too small");
  auto [gx, gw] = gauss_legendre(g.gauss);
  const int n = g.periodic;
  const double h = 2.0 * kPi / n;
  CycleRule rule;
  rule.R = R;
  rule.z.reserve(static_cast<size_t>(n) * n * n * g.gauss);
  rule.w.reserve(rule.z.capacity());
  const double R4 = R * R * R * R;
  for (int ip = 0; ip < n; ++ip) {
    double psi = ip * h;
    cplx e = R * std::exp(I * psi);
    cplx wpsi = -I * R4 * std::exp(4.0 * I * psi) * (0.5 * h);
    for (int ie = 0; ie < g.gauss; ++ie) {
      double eta = 0.25 * kPi * (gx[ie] + 1.0);
      double weta = 0.25 * kPi * gw[ie] * std::sin(eta) * std::cos(eta);
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
          auto x = hopf_point(eta, i1 * h, i2 * h);
          rule.z.push_back(HMatrix::from_coords({x[0], x[1], x[2], x[3]}) * e);
          rule.w.push_back(wpsi * (weta * h * h));
        }
    }
  }
  return rule;
}

namespace {
constexpr int kBlocks = 64;
}

cplx integrate_rule(const CycleRule &rule, const CycleFunction &f) {
  const std::int64_t n = static_cast<std::int64_t>(rule.z.size());
  std::array<cplx, kBlocks> part{};
#pragma omp parallel for schedule(static)
  for (int b = 0; b < kBlocks; ++b) {
    std::int64_t lo = n * b / kBlocks, hi = n * (b + 1) / kBlocks;
    cplx s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += f(rule.z[i]) * rule.w[i];
    part[b] = s;
  }
  cplx total = 0.0;
  for (const auto &p : part) total += p;
  return total;
}

cplx integrate_rule_serial(const CycleRule &rule, const CycleFunction &f) {
  cplx total = 0.0;
  for (size_t i = 0; i < rule.z.size(); ++i) total += f(rule.z[i]) * rule.w[i];
  return total;
}

GridSpec coarser_grid(const GridSpec &g) {
  // keep the periodic count even: odd counts alias differently and can
  // agree with the fine grid far better than either is accurate
  const int p = (g.periodic - std::max(2, g.periodic / 4)) & ~1;
  return {std::max(2, p), std::max(1, g.gauss - std::max(1, g.gauss / 4))};
}

EvalResult cycle_integrate(const CycleFunction &f, double R, const GridSpec &g, double tol) {
  const GridSpec coarse = coarser_grid(g);
  CycleRule fine_rule = make_cycle_rule(R, g);
  CycleRule coarse_rule = make_cycle_rule(R, coarse);
  cplx fine = integrate_rule(fine_rule, f);
  cplx rough = integrate_rule(coarse_rule, f);
  double l1 = 0.0;
  for (size_t i = 0; i < fine_rule.z.size(); ++i) l1 += std::abs(f(fine_rule.z[i]) * fine_rule.w[i]);
  EvalResult r;
  r.value = fine;
  r.error = std::abs(fine - rough);
  r.method = Method::quadrature;
  r.cost = static_cast<std::int64_t>(fine_rule.z.size() + coarse_rule.z.size());
  r.meta = "periodic=" + std::to_string(g.periodic) + " gauss=" + std::to_string(g.gauss);
  if (tol > 0.0 && r.error > tol * std::max(std::abs(fine), 1e-3 * l1))
    throw Error(ErrorKind::GridTooCoarse,
                "refinement disagreement " + std::to_string(r.error));
  return r;
}

HMatrix random_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 2.0 * kPi);
  std::array<double, 4> x;
  double s = 0.0;
  for (auto &v : x) {
    v = nd(rng);
    s += v * v;
  }
  s = std::sqrt(s);
  HMatrix q = HMatrix::from_coords({x[0] / s, x[1] / s, x[2] / s, x[3] / s});
  return q * std::exp(I * ud(rng));
}

GroupElement sample_group_element(double R, double epsilon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto rnd = [&] { return cplx(nd(rng), nd(rng)); };
  auto anti_herm = [&] {
    HMatrix m{cplx(0, nd(rng)), 0.0, 0.0, cplx(0, nd(rng))};
    cplx off = rnd();
    m.z12 = off;
    m.z21 = -std::conj(off);
    return m;
  };
  HMatrix A = anti_herm(), D = anti_herm();
  HMatrix B{rnd(), rnd(), rnd(), rnd()};
  HMatrix C = B.adjoint();
  GroupElement x;
  x.a = A;
  x.b = B * R;
  x.c = C * (1.0 / R);
  x.d = D;
  M4 X = to_eigen(x);
  double fn = std::sqrt((A.adjoint() * A).trace().real() + (D.adjoint() * D).trace().real() +
                        2.0 * (B.adjoint() * B).trace().real());
  M4 E = (X * (epsilon / fn)).exp();
  return from_eigen(E);
}

} // namespace magic
