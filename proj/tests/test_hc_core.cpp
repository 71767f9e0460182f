#include "doctest.h"
#include "helpers.hpp"

#include "magic/hc_core.hpp"

using namespace magic;
using magic::test::random_matrix;
using magic::test::rel;

namespace {
const cplx I(0, 1);
const cplx kNormalization = -2.0 * kPi * kPi * kPi * I;
} // namespace

TEST_CASE("norm of simple matrices") {
  CHECK(norm(HMatrix::identity()) == cplx(1.0));
  CHECK(norm(HMatrix::diag(2.0, 3.0)) == cplx(6.0));
  HMatrix z = HMatrix::from_coords({1.0, 1.0, 0.0, 0.0});
  CHECK(std::abs(norm(z) - 2.0) < 1e-15);
}

TEST_CASE("coordinate round trip and sum of squares") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    HMatrix Z = random_matrix(rng);
    auto c = Z.coords();
    HMatrix back = HMatrix::from_coords(c);
    CHECK((back - Z).max_abs() < 1e-15);
    cplx sq = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
    CHECK(std::abs(sq - norm(Z)) < 1e-13);
  }
}

TEST_CASE("invert") {
  CHECK((invert(HMatrix::identity()) - HMatrix::identity()).max_abs() == 0.0);
  CHECK((invert(HMatrix::diag(2.0, 3.0)) - HMatrix::diag(0.5, 1.0 / 3.0)).max_abs() < 1e-16);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    HMatrix Z = random_matrix(rng);
    CHECK((Z * invert(Z) - HMatrix::identity()).max_abs() < 1e-14);
  }
  CHECK_THROWS_AS(invert(HMatrix{1.0, 2.0, 2.0, 4.0}), Error);
}

TEST_CASE("norm identities") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    HMatrix Z = random_matrix(rng), W = random_matrix(rng);
    cplx lhs = norm(invert(Z) - invert(W));
    cplx rhs = norm(Z - W) / (norm(Z) * norm(W));
    CHECK(rel(lhs, rhs) < 1e-12);
    CHECK(rel(norm(Z * W), norm(Z) * norm(W)) < 1e-13);
  }
}

TEST_CASE("fractional linear action") {
  std::mt19937_64 rng(4);
  HMatrix Z = random_matrix(rng);
  CHECK((fractional_linear(GroupElement::identity(), Z) - Z).max_abs() < 1e-15);
  CHECK((fractional_linear(GroupElement::swap(), Z) - invert(Z)).max_abs() < 1e-14);
  for (int t = 0; t < 10; ++t) {
    GroupElement h = sample_group_element(1.0, 0.5, 100 + t);
    HMatrix U = random_unitary(200 + t);
    HMatrix img = fractional_linear(h, U);
    CHECK((img * img.adjoint() - HMatrix::identity()).max_abs() < 1e-12);
    HMatrix alt = fractional_linear_alt(h, U);
    CHECK((img - alt).max_abs() < 1e-12);
  }
  GroupElement pole = GroupElement::swap();
  CHECK_THROWS_AS(fractional_linear(pole, HMatrix{}), Error);
}

TEST_CASE("domain membership") {
  CHECK(in_domain(HMatrix{}, 1.0, Side::plus));
  CHECK_FALSE(in_domain(HMatrix{}, 1.0, Side::minus));
  HMatrix U = random_unitary(5) * 2.0;
  CHECK_FALSE(in_domain(U, 2.0, Side::plus));
  CHECK_FALSE(in_domain(U, 2.0, Side::minus));
  HMatrix mixed = HMatrix::diag(0.5, 2.0);
  CHECK_FALSE(in_domain(mixed, 1.0, Side::plus));
  CHECK_FALSE(in_domain(mixed, 1.0, Side::minus));
  CHECK(in_domain(HMatrix::diag(3.0, 4.0), 1.0, Side::minus));
}

TEST_CASE("cycle chart") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    CyclePoint p;
    p.R = 0.5 + 2.0 * u(rng);
    p.psi = kPi * u(rng);
    p.s3 = hopf_point(0.5 * kPi * u(rng), 2 * kPi * u(rng), 2 * kPi * u(rng));
    HMatrix Z = p.embed();
    CHECK((Z * Z.adjoint() - HMatrix::identity() * (p.R * p.R)).max_abs() < 1e-13);
    CyclePoint q = CyclePoint::from_hmatrix(Z);
    CHECK(std::abs(q.R - p.R) < 1e-13);
    CHECK(std::abs(q.psi - p.psi) < 1e-12);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(q.s3[k] - p.s3[k]) < 1e-12);
  }
}

TEST_CASE("normalization integral") {
  for (double R : {0.5, 1.0, 2.0}) {
    auto r = cycle_integrate([](const HMatrix &Z) { return 1.0 / (norm(Z) * norm(Z)); }, R);
    CHECK(rel(r.value, kNormalization) < 1e-10);
    CHECK(r.error < 1e-9);
  }
  auto zero1 = cycle_integrate([](const HMatrix &Z) { return 1.0 / norm(Z); }, 1.3);
  CHECK(std::abs(zero1.value) < 1e-12);
  auto zero0 = cycle_integrate([](const HMatrix &) { return cplx(1.0); }, 1.3);
  CHECK(std::abs(zero0.value) < 1e-12);
  auto zt = cycle_integrate([](const HMatrix &Z) { return Z.z22 / (norm(Z) * norm(Z)); }, 0.7);
  CHECK(std::abs(zt.value) < 1e-12);
}

TEST_CASE("weight from the chart matches the rule") {
  CyclePoint p;
  p.R = 1.7;
  p.psi = 0.3;
  auto [Z, w] = cycle_point_and_weight(p);
  CHECK(std::abs(w - (-I) * std::pow(1.7, 4) * std::exp(4.0 * I * 0.3)) < 1e-12);
  CHECK((Z - p.embed()).max_abs() == 0.0);
}

TEST_CASE("spectral convergence of the normalization") {
  auto f = [](const HMatrix &Z) {
    // non-polynomial integrand with the normalization as exact value
    return 1.0 / (norm(Z) * norm(Z));
  };
  double prev = 1.0;
  for (int n : {2, 4, 8}) {
    CycleRule rule = make_cycle_rule(1.0, GridSpec{n, n / 2 + 1});
    double err = std::abs(integrate_rule(rule, f) - kNormalization) / std::abs(kNormalization);
    if (prev > 1e-13) CHECK((err < prev / 10.0 || err < 1e-13));
    prev = err;
  }
}

TEST_CASE("parallel and serial quadrature agree") {
  CycleRule rule = make_cycle_rule(1.0, GridSpec{12, 8});
  HMatrix W = random_unitary(9) * 0.3;
  auto f = [&](const HMatrix &Z) { return 1.0 / (norm(Z - W) * norm(Z)); };
  cplx a = integrate_rule(rule, f), b = integrate_rule_serial(rule, f);
  CHECK(std::abs(b) > 1.0);
  CHECK(std::abs(a - b) < 1e-13 * std::abs(b));
}

TEST_CASE("grid too coarse is reported") {
  HMatrix W = random_unitary(10) * 0.9;
  auto f = [&](const HMatrix &Z) { return 1.0 / (norm(Z - W) * norm(Z)); };
  CHECK_THROWS_AS(cycle_integrate(f, 1.0, GridSpec{4, 2}, 1e-10), Error);
}

TEST_CASE("group sampling") {
  GroupElement e = sample_group_element(2.0, 0.0, 1);
  CHECK((e.a - HMatrix::identity()).max_abs() < 1e-15);
  CHECK(e.b.max_abs() < 1e-15);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const double R = 1.5;
    GroupElement h = sample_group_element(R, 0.3, s);
    CHECK(h.u22_residual(R) < 1e-10);
    for (int t = 0; t < 20; ++t) {
      HMatrix U = random_unitary(1000 * s + t) * R;
      HMatrix img = fractional_linear(h, U);
      CHECK((img * img.adjoint() - HMatrix::identity() * (R * R)).max_abs() < 1e-11);
      HMatrix inner = random_unitary(5000 * s + t) * (0.8 * R);
      CHECK(in_domain(fractional_linear(h, inner), R, Side::plus));
    }
  }
}
