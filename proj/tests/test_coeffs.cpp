#include "doctest.h"
#include "helpers.hpp"

#include "magic/coeffs.hpp"

using namespace magic;

namespace {

LaurentPoly z(int ij) { return LaurentPoly::var(ij); }

std::array<GaussRational, 4> rational_point(int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-7, 7);
  auto q = [&] {
    mpq_class re(d(rng), 1 + std::abs(d(rng))), im(d(rng), 3);
    re.canonicalize();
    im.canonicalize();
    return GaussRational(re, im);
  };
  return {q(), q(), q(), q()};
}

std::array<GaussRational, 4> matmul(const std::array<GaussRational, 4> &a,
                                    const std::array<GaussRational, 4> &b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

} // namespace

TEST_CASE("matrix coefficients of low spin") {
  CHECK(tcoeff_poly(0, 0, 0) == LaurentPoly::constant(1));
  CHECK(tcoeff_poly(1, -1, -1) == z(0));
  CHECK(tcoeff_poly(1, -1, 1) == z(1));
  CHECK(tcoeff_poly(1, 1, -1) == z(2));
  CHECK(tcoeff_poly(1, 1, 1) == z(3));
  CHECK(tcoeff_poly(2, 2, 2) == z(3) * z(3));
  CHECK_THROWS_AS(tcoeff_poly(1, 3, 1), Error);
}

TEST_CASE("Laurent ring basics") {
  LaurentPoly n = LaurentPoly::N();
  CHECK(n * LaurentPoly::N_power(-1) == LaurentPoly::constant(1));
  CHECK(LaurentPoly::N_power(2) * LaurentPoly::N_power(-3) == LaurentPoly::N_power(-1));
  auto pt = rational_point(1);
  LaurentPoly f = z(0) * z(3) * LaurentPoly::N_power(-2) + z(1) * GaussRational(3);
  GaussRational exact = f.eval_exact(pt);
  HMatrix Z{pt[0].to_complex(), pt[1].to_complex(), pt[2].to_complex(), pt[3].to_complex()};
  CHECK(std::abs(f.eval(Z) - exact.to_complex()) < 1e-12 * std::abs(exact.to_complex()));
}

TEST_CASE("inverse relation constants") {
  auto r0 = tcoeff_inverse_relation(0, 0, 0);
  CHECK(r0.c == GaussRational(1));
  auto r1 = tcoeff_inverse_relation(1, 1, 1);
  CHECK(r1.c == GaussRational(1));
  CHECK(r1.target == CoeffIndex{-1, 1, -1, -1});
  auto r2 = tcoeff_inverse_relation(1, 1, -1);
  CHECK(r2.c == GaussRational(-1));
  for (int tl = 0; tl <= 8; ++tl)
    for (int tm = -tl; tm <= tl; tm += 2)
      for (int tn = -tl; tn <= tl; tn += 2) {
        auto r = tcoeff_inverse_relation(tl, tm, tn);
        CHECK(r.c == inverse_constant_exact(tl, tm, tn));
      }
}

TEST_CASE("multiplicativity on rational samples") {
  auto A = rational_point(2), B = rational_point(3);
  auto AB = matmul(A, B);
  for (int tl = 0; tl <= 3; ++tl)
    for (int tn = -tl; tn <= tl; tn += 2)
      for (int tm = -tl; tm <= tl; tm += 2) {
        GaussRational lhs = tcoeff_poly(tl, tn, tm).eval_exact(AB);
        GaussRational rhs;
        for (int tk = -tl; tk <= tl; tk += 2)
          rhs += tcoeff_poly(tl, tn, tk).eval_exact(A) * tcoeff_poly(tl, tk, tm).eval_exact(B);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("matrix coefficients are harmonic") {
  for (int tl = 0; tl <= 6; ++tl)
    for (int tn = -tl; tn <= tl; tn += 2)
      for (int tm = -tl; tm <= tl; tm += 2) CHECK(tcoeff_poly(tl, tn, tm).box().is_zero());
  CHECK(LaurentPoly::N_power(-1).box().is_zero());
  CHECK(LaurentPoly::N().box() == LaurentPoly::constant(8));
}

TEST_CASE("degree operator") {
  CHECK(LaurentPoly::constant(1).degt() == LaurentPoly::constant(1));
  CHECK(z(0).degt() == z(0) * GaussRational(2));
  CHECK(LaurentPoly::N_power(-1).degt() == LaurentPoly::N_power(-1) * GaussRational(-1));
  for (int k = -3; k <= 2; ++k)
    for (int tl = 0; tl <= 3; ++tl) {
      CoeffIndex idx{k, tl, tl, -tl};
      ExactBasisVector v{{idx, GaussRational(1)}};
      auto d = degt(v);
      CHECK(d[idx] == GaussRational(2 * k + tl + 1));
      CHECK(basis_poly(idx).degt() == basis_poly(idx) * GaussRational(2 * k + tl + 1));
    }
}

TEST_CASE("exact pairing examples") {
  CHECK(exact_pairing(LaurentPoly::constant(1), LaurentPoly::N_power(-2)) == GaussRational(1));
  CHECK(exact_pairing(z(3), LaurentPoly::N_power(-3) * z(0)) == GaussRational(mpq_class(1, 2)));
  CHECK(exact_pairing(LaurentPoly::constant(1), LaurentPoly::N_power(-1)).is_zero());
}

TEST_CASE("exact orthogonality table") {
  // <N^k' t^l'_{n'm'}, N^{-k-2} t^l_{mn}(Z^{-1})> = delta / (2l+1)
  for (int tl = 0; tl <= 2; ++tl)
    for (int tlp = 0; tlp <= 2; ++tlp)
      for (int k = -1; k <= 1; ++k)
        for (int kp = -1; kp <= 1; ++kp)
          for (int tn = -tl; tn <= tl; tn += 2)
            for (int tm = -tl; tm <= tl; tm += 2)
              for (int tnp = -tlp; tnp <= tlp; tnp += 2)
                for (int tmp = -tlp; tmp <= tlp; tmp += 2) {
                  LaurentPoly f1 = basis_poly({kp, tlp, tnp, tmp});
                  LaurentPoly inv = LaurentPoly::N_power(-k - 2 - tl) *
                                    tcoeff_poly(tl, tm, tn).adjugate_substitute();
                  GaussRational got = exact_pairing(f1, inv);
                  bool same = k == kp && tl == tlp && tm == tmp && tn == tnp;
                  CHECK(got == (same ? GaussRational(mpq_class(1, tl + 1)) : GaussRational(0)));
                }
}

TEST_CASE("decomposition examples") {
  auto d = harmonic_decompose(z(0) * z(3));
  CHECK(d.size() == 2);
  CHECK(d[CoeffIndex{1, 0, 0, 0}] == GaussRational(mpq_class(1, 2)));
  CHECK(d[CoeffIndex{0, 2, 0, 0}] == GaussRational(mpq_class(1, 2)));
  auto n3 = harmonic_decompose(LaurentPoly::N_power(3));
  CHECK(n3.size() == 1);
  CHECK(n3[CoeffIndex{3, 0, 0, 0}] == GaussRational(1));
  auto sq = harmonic_decompose(z(3) * z(3));
  CHECK(sq.size() == 1);
  CHECK(sq[CoeffIndex{0, 2, 2, 2}] == GaussRational(1));
}

TEST_CASE("decomposition is a left inverse of to_poly") {
  for (int tl = 0; tl <= 4; ++tl)
    for (int k = -3; k <= 3; ++k)
      for (int tn = -tl; tn <= tl; tn += 2)
        for (int tm = -tl; tm <= tl; tm += 2) {
          CoeffIndex idx{k, tl, tn, tm};
          ExactBasisVector v{{idx, GaussRational(mpq_class(2, 3), mpq_class(-1, 5))}};
          CHECK(harmonic_decompose(to_poly(v)) == v);
        }
  // a mixed vector
  ExactBasisVector v{{{-2, 1, 1, -1}, GaussRational(3)},
                     {{0, 3, -1, 3}, GaussRational(0, 1)},
                     {{1, 0, 0, 0}, GaussRational(mpq_class(-7, 2))}};
  CHECK(harmonic_decompose(to_poly(v)) == v);
}

TEST_CASE("subspace classification") {
  auto a = classify_subspace({0, 0, 0, 0});
  CHECK(a.zh_plus);
  CHECK(a.i2_plus);
  CHECK_FALSE(a.i2_minus);
  CHECK_FALSE(a.j2);
  auto b = classify_subspace({-2, 0, 0, 0});
  CHECK(b.i2_minus);
  CHECK_FALSE(b.j2);
  CHECK_FALSE(b.zh2_minus);
  CHECK_FALSE(b.zh_plus);
  CHECK_FALSE(b.i2_plus);
  auto c = classify_subspace({-1, 0, 0, 0});
  CHECK(c.i2_plus);
  CHECK_FALSE(c.i2_minus);
  CHECK_FALSE(c.zh_plus);
  CHECK_FALSE(c.j2);
  CHECK_FALSE(c.zh2_minus);
  auto e = classify_subspace({-3, 2, 0, 0});
  CHECK(e.j2);
  CHECK(e.i2_plus);
  CHECK(e.i2_minus);
}
