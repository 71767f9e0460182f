#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "magic/error.hpp"

namespace magic {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// Complexified quaternion as a 2x2 complex matrix.
struct HMatrix {
  cplx z11{}, z12{}, z21{}, z22{};

  static HMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static HMatrix diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }
  // z11 = z0 - i z3, z12 = -i z1 - z2, z21 = -i z1 + z2, z22 = z0 + i z3
  static HMatrix from_coords(const std::array<cplx, 4> &z);
  std::array<cplx, 4> coords() const;

  cplx trace() const { return z11 + z22; }
  HMatrix adjoint() const;
  double max_abs() const;

  HMatrix operator+(const HMatrix &o) const { return {z11 + o.z11, z12 + o.z12, z21 + o.z21, z22 + o.z22}; }
  HMatrix operator-(const HMatrix &o) const { return {z11 - o.z11, z12 - o.z12, z21 - o.z21, z22 - o.z22}; }
  HMatrix operator-() const { return {-z11, -z12, -z21, -z22}; }
  HMatrix operator*(const HMatrix &o) const {
    return {z11 * o.z11 + z12 * o.z21, z11 * o.z12 + z12 * o.z22,
            z21 * o.z11 + z22 * o.z21, z21 * o.z12 + z22 * o.z22};
  }
  HMatrix operator*(cplx s) const { return {z11 * s, z12 * s, z21 * s, z22 * s}; }
  friend HMatrix operator*(cplx s, const HMatrix &m) { return m * s; }
};

inline cplx norm(const HMatrix &Z) { return Z.z11 * Z.z22 - Z.z12 * Z.z21; }
HMatrix invert(const HMatrix &Z);
// largest singular value
double op_norm(const HMatrix &Z);
// singular values, descending
std::array<double, 2> singular_values(const HMatrix &Z);

// 4x4 matrix (a b; c d) with cached inverse blocks (a' b'; c' d').
struct GroupElement {
  HMatrix a, b, c, d;
  HMatrix ai, bi, ci, di;

  static GroupElement identity();
  static GroupElement from_blocks(const HMatrix &a, const HMatrix &b,
                                  const HMatrix &c, const HMatrix &d);
  // (0 1; 1 0)
  static GroupElement swap();
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement &o) const;
  // residual of a*a = 1 + c*c, d*d = 1 + b*b, a*b = c*d after conjugating
  // by diag(R^-1, 1), i.e. membership in U(2,2)_R
  double u22_residual(double R = 1.0) const;
};

HMatrix fractional_linear(const GroupElement &h, const HMatrix &Z);
// (a' - Z c')^{-1} (-b' + Z d')
HMatrix fractional_linear_alt(const GroupElement &h, const HMatrix &Z);

enum class Side { plus, minus };
bool in_domain(const HMatrix &Z, double R, Side sign, double tol = 1e-12);

struct CyclePoint {
  double R = 1.0;
  double psi = 0.0;
  std::array<double, 4> s3{1.0, 0.0, 0.0, 0.0};

  HMatrix embed() const;
  static CyclePoint from_hmatrix(const HMatrix &Z);
};

// S3 Hopf chart: x0 = cos(eta)cos(xi1), x3 = cos(eta)sin(xi1),
// x1 = sin(eta)sin(xi2), x2 = sin(eta)cos(xi2); density sin(eta)cos(eta).
std::array<double, 4> hopf_point(double eta, double xi1, double xi2);

// Embedded point and dV weight relative to dpsi * (sin eta cos eta deta dxi1 dxi2).
std::pair<HMatrix, cplx> cycle_point_and_weight(const CyclePoint &p);

struct GridSpec {
  int periodic = 32;
  int gauss = 16;
};

// All nodes of the tensor rule on U(2)_R, weights include the dV pullback.
// psi runs over the full circle with half weight so every periodic
// direction gets the trapezoidal rule.
struct CycleRule {
  double R = 1.0;
  std::vector<HMatrix> z;
  std::vector<cplx> w;
};
CycleRule make_cycle_rule(double R, const GridSpec &g);

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

enum class Method { quadrature, montecarlo, spectral };
const char *method_name(Method m);

struct EvalResult {
  cplx value{};
  double error = 0.0;
  Method method = Method::quadrature;
  std::int64_t cost = 0;
  std::string meta;
};

using CycleFunction = std::function<cplx(const HMatrix &)>;

// sum of f*w over the rule (unnormalized dV integral)
cplx integrate_rule(const CycleRule &rule, const CycleFunction &f);
cplx integrate_rule_serial(const CycleRule &rule, const CycleFunction &f);

// grid used for the refinement error estimate
GridSpec coarser_grid(const GridSpec &g);
// dV integral of f over U(2)_R with refinement error estimate.
// tol <= 0 disables the GridTooCoarse check.
EvalResult cycle_integrate(const CycleFunction &f, double R,
                           const GridSpec &g = {}, double tol = 0.0);

GroupElement sample_group_element(double R, double epsilon, std::uint64_t seed);
HMatrix random_unitary(std::uint64_t seed);

} // namespace magic
