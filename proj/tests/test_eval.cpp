#include <doctest.h>

#include "helpers.hpp"
#include "magic/eval.hpp"

using namespace magic;
using magic::test::rel;

namespace {

PointFunction spectral_of(const BoxDiagram &d, int twoL) {
  return [d, twoL](const EvalPoint &q) { return spectral_value(d, q, twoL); };
}

double geo_mean_radius(const CycleAssignment &a) {
  double lo = *std::min_element(a.r.begin(), a.r.end());
  double hi = *std::max_element(a.r.begin(), a.r.end());
  return std::sqrt(lo * hi);
}

} // namespace

TEST_CASE("one-loop quadrature matches spectral elimination") {
  auto d = one_loop();
  auto a = assign_radii(d);
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto p = sample_point(a, s);
    auto q = eval_quadrature(d, a, p, {24, 12}, 1e-8);
    auto sp = eval_spectral(d, a, p, 8, 1e-8);
    CHECK(rel(q.value, sp.value) < 1e-6);
    CHECK(q.error < 1e-8 * std::abs(q.value));
    CHECK(q.method == Method::quadrature);
    CHECK(sp.method == Method::spectral);
  }
}

TEST_CASE("one-loop is symmetric under Z1 <-> Z2") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 9);
  EvalPoint q = p;
  std::swap(q.Z1, q.Z2);
  CHECK(rel(quadrature_sum(d, a, p, {16, 8}), quadrature_sum(d, a, q, {16, 8})) < 1e-12);
}

TEST_CASE("integrand is smooth on the cycles") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 4);
  auto rule = make_cycle_rule(a.r[0], {16, 8});
  double mn = 1e300;
  for (const auto &t : rule.z)
    for (int e = 0; e < kExternals; ++e) mn = std::min(mn, std::abs(norm(t - p.external(e))));
  CHECK(mn > 0.1);
}

TEST_CASE("parallel and serial quadrature sums agree") {
  auto d = enumerate_diagrams(2)[0];
  auto a = assign_radii(d);
  auto p = sample_point(a, 2);
  cplx par = quadrature_sum(d, a, p, {6, 4});
  cplx ser = quadrature_sum_serial(d, a, p, {6, 4});
  CHECK(par == ser);
}

TEST_CASE("quadrature errors") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 1);
  EvalPoint bad = p;
  bad.Z1 = HMatrix::identity() * (a.r[0] * 1.01);
  CHECK_THROWS_WITH(eval_quadrature(d, a, bad, {8, 4}),
                    doctest::Contains("DomainViolation"));
  CHECK_THROWS_WITH(eval_quadrature(d, a, p, {4, 2}, 1e-12), doctest::Contains("GridTooCoarse"));
}

TEST_CASE("two-loop quadrature matches spectral") {
  auto ds = enumerate_diagrams(2);
  auto a = assign_radii(ds[0]);
  auto p = sample_point(a, 21);
  auto q = eval_quadrature(ds[0], a, p, {10, 6});
  auto sp = eval_spectral(ds[0], a, p, 6);
  CHECK(rel(q.value, sp.value) < 1e-5);
  CHECK(std::abs(q.value - sp.value) <= q.error + sp.error + 1e-6 * std::abs(sp.value));
}

TEST_CASE("two-loop diagrams agree spectrally") {
  auto ds = enumerate_diagrams(2);
  REQUIRE(ds.size() == 2);
  std::vector<CycleAssignment> as{assign_radii(ds[0]), assign_radii(ds[1])};
  for (std::uint64_t s = 0; s < 2; ++s) {
    auto p = sample_shared_point(as, s);
    validate_point(as[0], p);
    validate_point(as[1], p);
    auto v0 = eval_spectral(ds[0], as[0], p, 6).value;
    auto v1 = eval_spectral(ds[1], as[1], p, 6).value;
    CHECK(rel(v0, v1) < 1e-9);
  }
}

TEST_CASE("spectral errors") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 0);
  CHECK_THROWS_WITH(eval_spectral(d, a, p, 1, 1e-14), doctest::Contains("TruncationInsufficient"));
  // a 3-loop diagram whose first internal touches two pending internals
  bool unsupported = false;
  for (const auto &d3 : enumerate_diagrams(3)) {
    try {
      spectral_value(d3, sample_point(assign_radii(d3), 0), 2);
    } catch (const Error &e) {
      unsupported = unsupported || e.kind() == ErrorKind::UnsupportedTopology;
    }
  }
  CHECK(unsupported);
}

TEST_CASE("degree selection: mismatched homogeneity integrates to zero") {
  // 1/(N(T-Z1) N(T-Z2)) with T inside both has only degrees >= -4 + 4
  auto a = assign_radii(one_loop());
  auto p = sample_point(a, 3);
  auto prod = multiply(outside_series(p.Z1, 6), outside_series(p.Z2, 6));
  CHECK(integrate(prod) == cplx(0.0));
  auto f = [&](const HMatrix &t) { return 1.0 / (norm(t - p.Z1) * norm(t - p.Z2)); };
  auto r = cycle_integrate(f, 1.0, {16, 8});
  const double scale = 2.0 * kPi * kPi * kPi / std::abs(norm(p.Z1) * norm(p.Z2));
  CHECK(std::abs(r.value) < 1e-7 * scale);
}

TEST_CASE("Monte Carlo agrees with quadrature and scales") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 3);
  auto q = eval_quadrature(d, a, p, {24, 12});
  auto m1 = eval_montecarlo(d, a, p, 40000, 7);
  auto m2 = eval_montecarlo(d, a, p, 160000, 8);
  CHECK(std::abs(m1.value - q.value) < 3.0 * m1.error);
  CHECK(std::abs(m2.value - q.value) < 3.0 * m2.error);
  CHECK(m1.error / m2.error == doctest::Approx(2.0).epsilon(0.1));
  auto again = eval_montecarlo(d, a, p, 40000, 7);
  CHECK(again.value == m1.value);
  CHECK(again.error == m1.error);
  CHECK(m1.cost == 40000);
}

TEST_CASE("laplacian residual controls") {
  HMatrix Z = random_unitary(3) * 2.0;
  auto inv = [](const HMatrix &X) { return 1.0 / norm(X); };
  auto nn = [](const HMatrix &X) { return norm(X); };
  CHECK(laplacian_residual(inv, Z, 1e-3) < 1e-4);
  CHECK(laplacian_residual(nn, Z, 1e-3) == doctest::Approx(8.0).epsilon(1e-4));
}

TEST_CASE("one-loop function is harmonic in each variable") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 6);
  auto l = spectral_of(d, 8);
  for (int v = 0; v < kExternals; ++v) {
    const double r1 = laplacian_residual(l, p, v, 0.04);
    const double r2 = laplacian_residual(l, p, v, 0.02);
    CHECK(laplacian_residual(l, p, v, 1e-3) < 1e-4);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("conformal covariance, one loop") {
  auto d = one_loop();
  auto a = assign_radii(d);
  auto p = sample_point(a, 8);
  auto l = spectral_of(d, 14);
  CHECK(conformal_check(a, p, GroupElement::identity(), l) < 1e-14);
  for (std::uint64_t s = 0; s < 2; ++s) {
    auto h = sample_group_element(geo_mean_radius(a), 0.1, 40 + s);
    CHECK(conformal_check(a, p, h, l) < 1e-6);
  }
}

TEST_CASE("inversion relation") {
  for (int n : {1, 2})
    for (const auto &d : enumerate_diagrams(n)) {
      auto q = sample_point(assign_radii(d), 12);
      CHECK(inversion_check(d, q, 8) < 1e-5);
    }
}

TEST_CASE("inverted assignment reverses the nesting") {
  auto d = enumerate_diagrams(2)[0];
  auto a = assign_radii(d);
  auto b = inverted_assignment(a);
  CHECK(b.r[0] > b.r[1]);
  CHECK(b.rMax[1] == doctest::Approx(1.0 / a.rMin[1]));
}

TEST_CASE("wrong-cycle experiment reports a finite value") {
  auto d = enumerate_diagrams(2)[0];
  auto a = assign_radii(d);
  auto p = sample_point(a, 2);
  auto r = wrong_cycle_experiment(d, a, p, {6, 4});
  CHECK(std::isfinite(r.value.real()));
  CHECK(std::isfinite(r.error));
}
