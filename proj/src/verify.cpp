#include "magic/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "magic/eval.hpp"
#include "magic/operators.hpp"

namespace magic {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.pass; });
}

namespace {

using Checks = std::vector<CheckRecord>;

CheckRecord record(std::string id, std::string claim, std::string inputs,
                   std::vector<double> values, double tol, bool pass) {
  return {std::move(id), std::move(claim), std::move(inputs), std::move(values), tol, pass};
}

// a check whose body may throw; the error lands in the record
void guarded(Checks &out, const std::string &id, const std::string &claim,
             const std::function<CheckRecord()> &body) {
  try {
    out.push_back(body());
  } catch (const std::exception &e) {
    out.push_back(record(id, claim, std::string("error: ") + e.what(), {}, 0.0, false));
  }
}

std::string str(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::vector<CoeffIndex> index_set(int kmin, int kmax, int maxTwoL) {
  std::vector<CoeffIndex> v;
  for (int k = kmin; k <= kmax; ++k)
    for (int tl = 0; tl <= maxTwoL; ++tl)
      for (int n = -tl; n <= tl; n += 2)
        for (int m = -tl; m <= tl; m += 2) v.push_back({k, tl, n, m});
  return v;
}

std::vector<BasisVector> units(const std::vector<CoeffIndex> &idx) {
  std::vector<BasisVector> v;
  for (const auto &i : idx) v.push_back(BasisVector::unit(i));
  return v;
}

std::string label(const BoxDiagram &d) {
  std::string w;
  for (int t : d.history) w += (w.empty() ? "" : ",") + vertex_name(t);
  return "n=" + std::to_string(d.loops) + " word=" + (w.empty() ? "-" : w);
}

bool wants(const VerifyConfig &cfg, int n) { return cfg.loops == 0 || cfg.loops == n; }

int lmax_or(const VerifyConfig &cfg, int dflt) { return cfg.lmax > 0 ? cfg.lmax : dflt; }

// ---- 1 ----------------------------------------------------------------------
Checks normalization_checks(const VerifyConfig &cfg) {
  Checks out;
  const cplx expect(0.0, -2.0 * kPi * kPi * kPi);
  for (double R : {0.5, 1.0, 2.0}) {
    const std::string id = "normalization.R=" + str(R);
    guarded(out, id, "integral of dV/N^2 over U(2)_R is -2 pi^3 i", [&] {
      auto r = cycle_integrate([](const HMatrix &Z) { return 1.0 / (norm(Z) * norm(Z)); }, R,
                               cfg.grid1);
      const double rel = std::abs(r.value - expect) / std::abs(expect);
      return record(id, "integral of dV/N^2 over U(2)_R is -2 pi^3 i",
                    "R=" + str(R) + " grid=" + std::to_string(cfg.grid1.periodic) + "x" +
                        std::to_string(cfg.grid1.gauss),
                    {r.value.real(), r.value.imag(), rel}, 1e-8, rel < 1e-8);
    });
  }
  return out;
}

// ---- 2 ----------------------------------------------------------------------
Checks orthogonality_checks(const VerifyConfig &) {
  Checks out;
  const auto idx = index_set(-2, 2, 3);
  auto table = [&](const CoeffIndex &a, const CoeffIndex &b) -> double {
    if (a.twoL != b.twoL || a.k + b.k != -2 - a.twoL || b.twoN != -a.twoN || b.twoM != -a.twoM)
      return 0.0;
    return pairing_value(a.twoL, a.twoN, a.twoM);
  };
  guarded(out, "orthogonality.exact", "exact pairing table", [&] {
    std::vector<LaurentPoly> P;
    for (const auto &i : idx) P.push_back(basis_poly(i));
    int bad = 0;
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) {
        const GaussRational v = exact_pairing(P[a], P[b]);
        const GaussRational expect =
            table(idx[a], idx[b]) == 0.0
                ? GaussRational{}
                : GaussRational{1} / (GaussRational{idx[a].twoL + 1} *
                                      inverse_constant_exact(idx[a].twoL, idx[a].twoM, idx[a].twoN));
        if (!(v == expect)) ++bad;
      }
    return record("orthogonality.exact", "exact pairing table",
                  std::to_string(idx.size()) + " labels, 2l<=3, |k|<=2",
                  {static_cast<double>(bad)}, 0.0, bad == 0);
  });
  guarded(out, "orthogonality.quadrature", "pairing table under quadrature", [&] {
    const CycleRule rule = make_cycle_rule(1.3, {24, 12});
    const Eigen::Index nodes = static_cast<Eigen::Index>(rule.z.size());
    Eigen::MatrixXcd F(nodes, static_cast<Eigen::Index>(idx.size()));
    for (Eigen::Index i = 0; i < nodes; ++i) {
      const HMatrix &Z = rule.z[static_cast<size_t>(i)];
      std::vector<std::vector<cplx>> tau(4);
      for (int tl = 0; tl <= 3; ++tl) tau[tl] = tau_matrix(tl, Z);
      const cplx nz = norm(Z);
      for (size_t j = 0; j < idx.size(); ++j) {
        const auto &c = idx[j];
        const int d = c.twoL + 1;
        F(i, static_cast<Eigen::Index>(j)) =
            std::pow(nz, c.k) *
            tau[c.twoL][static_cast<size_t>((c.twoN + c.twoL) / 2) * d + (c.twoM + c.twoL) / 2];
      }
    }
    Eigen::VectorXcd w(nodes);
    for (Eigen::Index i = 0; i < nodes; ++i) w(i) = rule.w[static_cast<size_t>(i)];
    const Eigen::MatrixXcd G = F.transpose() * (w.asDiagonal() * F);
    const cplx norm_c(0.0, 1.0 / (2.0 * kPi * kPi * kPi));
    double worst = 0.0;
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b)
        worst = std::max(worst, std::abs(norm_c * G(static_cast<Eigen::Index>(a),
                                                     static_cast<Eigen::Index>(b)) -
                                          table(idx[a], idx[b])));
    return record("orthogonality.quadrature", "pairing table under quadrature",
                  "R=1.3 grid=24x12, 2l<=3, |k|<=2", {worst}, 1e-9, worst < 1e-9);
  });
  return out;
}

// ---- 3 ----------------------------------------------------------------------
Checks expansion_checks(const VerifyConfig &cfg) {
  Checks out;
  const HMatrix W = random_unitary(cfg.seed * 31 + 1) * 1.7;
  const HMatrix U = random_unitary(cfg.seed * 31 + 2);
  const HMatrix Z = U * W * 0.5;  // Z W^{-1} = 0.5 U
  const cplx exact = 1.0 / norm(Z - W);
  auto err = [&](int L) {
    return std::abs(expand_inv_norm(W, L).series.eval(Z) - exact) / std::abs(exact);
  };
  guarded(out, "expansion.lmax12", "1/N(Z-W) series at ratio 0.5", [&] {
    const double e = err(12);
    return record("expansion.lmax12", "1/N(Z-W) series at ratio 0.5", "Lmax=12 |ZW^-1|=0.5",
                  {e}, 1e-6, e < 1e-6);
  });
  guarded(out, "expansion.decay", "geometric decay rate of the truncation error", [&] {
    // least-squares slope of log(error) against Lmax
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int L = 2; L <= 12; ++L) {
      const double y = std::log(err(L));
      sx += L;
      sy += y;
      sxx += L * L;
      sxy += L * y;
      ++cnt;
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    const double rate = std::exp(slope);
    const double dev = std::abs(rate - 0.25) / 0.25;
    return record("expansion.decay", "geometric decay rate of the truncation error",
                  "Lmax=2..12 ratio=0.5, expected rate ratio^2", {rate, dev}, 0.1, dev < 0.1);
  });
  return out;
}

// ---- 4 ----------------------------------------------------------------------
Checks crossmethod_checks(const VerifyConfig &cfg) {
  Checks out;
  if (wants(cfg, 1)) {
    const auto d = one_loop();
    const auto a = assign_radii(d, cfg.base, cfg.ratio);
    for (int i = 0; i < 10; ++i) {
      const std::string id = "crossmethod.n1.p" + std::to_string(i);
      guarded(out, id, "one-loop quadrature agrees with spectral", [&] {
        const auto p = sample_point(a, cfg.seed * 1000 + i);
        const auto q = eval_quadrature(d, a, p, cfg.grid1);
        const auto s = eval_spectral(d, a, p, lmax_or(cfg, 6));
        const double rel = std::abs(q.value - s.value) / std::abs(s.value);
        return record(id, "one-loop quadrature agrees with spectral",
                      "seed=" + std::to_string(cfg.seed * 1000 + i),
                      {q.value.real(), q.value.imag(), s.value.real(), s.value.imag(), rel}, 1e-6,
                      rel < 1e-6);
      });
    }
  }
  if (wants(cfg, 2)) {
    const auto ds = enumerate_diagrams(2);
    for (size_t k = 0; k < ds.size(); ++k) {
      const auto a = assign_radii(ds[k], cfg.base, cfg.ratio);
      for (int i = 0; i < 5; ++i) {
        const std::string id = "crossmethod.n2.d" + std::to_string(k) + ".p" + std::to_string(i);
        guarded(out, id, "two-loop quadrature agrees with spectral", [&] {
          const auto p = sample_point(a, cfg.seed * 2000 + i);
          const auto q = eval_quadrature(ds[k], a, p, cfg.grid2);
          const auto s = eval_spectral(ds[k], a, p, lmax_or(cfg, 8));
          const double rel = std::abs(q.value - s.value) / std::abs(s.value);
          return record(id, "two-loop quadrature agrees with spectral",
                        label(ds[k]) + " seed=" + std::to_string(cfg.seed * 2000 + i),
                        {q.value.real(), q.value.imag(), s.value.real(), s.value.imag(), rel},
                        1e-5, rel < 1e-5);
        });
      }
    }
  }
  return out;
}

// ---- 5 ----------------------------------------------------------------------
Checks magic_checks(const VerifyConfig &cfg) {
  Checks out;
  if (wants(cfg, 2)) {
    const auto ds = enumerate_diagrams(2);
    std::vector<CycleAssignment> as;
    for (const auto &d : ds) as.push_back(assign_radii(d, cfg.base, cfg.ratio));
    for (int i = 0; i < 5; ++i) {
      const std::string id = "magic.n2.p" + std::to_string(i);
      guarded(out, id, "both two-loop diagrams give the same value", [&] {
        const auto p = sample_shared_point(as, cfg.seed * 3000 + i);
        const cplx v0 = eval_spectral(ds[0], as[0], p, lmax_or(cfg, 8)).value;
        const cplx v1 = eval_spectral(ds[1], as[1], p, lmax_or(cfg, 8)).value;
        const double rel = std::abs(v0 - v1) / std::abs(v0);
        return record(id, "both two-loop diagrams give the same value",
                      "seed=" + std::to_string(cfg.seed * 3000 + i),
                      {v0.real(), v0.imag(), v1.real(), v1.imag(), rel}, 1e-6, rel < 1e-6);
      });
    }
  }
  if (wants(cfg, 3)) {
    const auto ds = enumerate_diagrams(3);
    std::vector<CycleAssignment> as;
    for (const auto &d : ds) as.push_back(assign_radii(d, cfg.base, cfg.ratio));
    for (int i = 0; i < 3; ++i) {
      const std::uint64_t ps = cfg.seed * 4000 + i;
      const auto p = sample_shared_point(as, ps);
      std::vector<EvalResult> r;
      for (size_t k = 0; k < ds.size(); ++k)
        r.push_back(eval_montecarlo(ds[k], as[k], p, cfg.samples, cfg.seed * 7919 + 101 * k + i));
      for (size_t x = 0; x < ds.size(); ++x)
        for (size_t y = x + 1; y < ds.size(); ++y) {
          const double band = 3.0 * std::hypot(r[x].error, r[y].error);
          const double dev = std::abs(r[x].value - r[y].value);
          out.push_back(record("magic.n3.p" + std::to_string(i) + ".d" + std::to_string(x) + "-d" +
                                   std::to_string(y),
                               "three-loop diagrams agree within Monte Carlo bands",
                               "point seed=" + std::to_string(ps) +
                                   " samples=" + std::to_string(cfg.samples),
                               {r[x].value.real(), r[x].value.imag(), r[y].value.real(),
                                r[y].value.imag(), dev / band * 3.0},
                               3.0, dev < band));
        }
    }
  }
  return out;
}

double geo_mean_radius(const CycleAssignment &a) {
  const double lo = *std::min_element(a.r.begin(), a.r.end());
  const double hi = *std::max_element(a.r.begin(), a.r.end());
  return std::sqrt(lo * hi);
}

// ---- 6 ----------------------------------------------------------------------
Checks conformal_checks(const VerifyConfig &cfg) {
  Checks out;
  if (wants(cfg, 1)) {
    const auto d = one_loop();
    const auto a = assign_radii(d, cfg.base, cfg.ratio);
    const auto p = sample_point(a, cfg.seed * 5000);
    PointFunction l = [&](const EvalPoint &q) { return quadrature_sum(d, a, q, cfg.grid1); };
    for (int i = 0; i < 5; ++i) {
      const std::string id = "conformal.n1.h" + std::to_string(i);
      guarded(out, id, "conformal covariance of the one-loop function", [&] {
        const auto h = sample_group_element(geo_mean_radius(a), 0.1, cfg.seed * 5100 + i);
        const double def = conformal_check(a, p, h, l);
        return record(id, "conformal covariance of the one-loop function",
                      "h seed=" + std::to_string(cfg.seed * 5100 + i) + " eps=0.1, quadrature",
                      {def}, 1e-6, def < 1e-6);
      });
    }
  }
  if (wants(cfg, 2)) {
    const auto ds = enumerate_diagrams(2);
    for (size_t k = 0; k < ds.size(); ++k) {
      const auto a = assign_radii(ds[k], cfg.base, cfg.ratio);
      const auto p = sample_point(a, cfg.seed * 5200 + k);
      const int twoL = 2 * lmax_or(cfg, 8);
      PointFunction l = [&](const EvalPoint &q) { return spectral_value(ds[k], a, q, twoL); };
      for (int i = 0; i < 5; ++i) {
        const std::string id = "conformal.n2.d" + std::to_string(k) + ".h" + std::to_string(i);
        guarded(out, id, "conformal covariance of the two-loop function", [&] {
          const auto h = sample_group_element(geo_mean_radius(a), 0.1, cfg.seed * 5300 + i);
          const double def = conformal_check(a, p, h, l);
          return record(id, "conformal covariance of the two-loop function",
                        label(ds[k]) + " h seed=" + std::to_string(cfg.seed * 5300 + i),
                        {def}, 1e-5, def < 1e-5);
        });
      }
    }
  }
  return out;
}

// ---- 7 ----------------------------------------------------------------------
Checks harmonic_checks(const VerifyConfig &cfg) {
  Checks out;
  std::vector<std::pair<BoxDiagram, int>> cases;  // diagram, 2 Lmax
  if (wants(cfg, 1)) cases.push_back({one_loop(), 2 * lmax_or(cfg, 6)});
  if (wants(cfg, 2))
    for (const auto &d : enumerate_diagrams(2)) cases.push_back({d, 2 * lmax_or(cfg, 6)});
  for (size_t c = 0; c < cases.size(); ++c) {
    const auto &[d, twoL] = cases[c];
    const auto a = assign_radii(d, cfg.base, cfg.ratio);
    const auto p = sample_point(a, cfg.seed * 6000 + c);
    PointFunction l = [&](const EvalPoint &q) { return spectral_value(d, a, q, twoL); };
    for (int v = 0; v < kExternals; ++v) {
      const std::string id =
          "harmonic.n" + std::to_string(d.loops) + ".c" + std::to_string(c) + "." + vertex_name(v);
      guarded(out, id, "box of l vanishes in each variable", [&] {
        const double r0 = laplacian_residual(l, p, v, 1e-3);
        const double r1 = laplacian_residual(l, p, v, 0.08);
        const double r2 = laplacian_residual(l, p, v, 0.04);
        const double ratio = r1 / r2;
        const bool ok = r0 < 1e-4 && std::abs(ratio - 4.0) < 0.4;
        return record(id, "box of l vanishes in each variable",
                      label(d) + " h=1e-3 and h=0.08/0.04 (ratio ~4)", {r0, r1, r2, ratio},
                      1e-4, ok);
      });
    }
  }
  return out;
}

// ---- 8 ----------------------------------------------------------------------
std::vector<BoxDiagram> operator_diagrams(const VerifyConfig &cfg) {
  std::vector<BoxDiagram> v;
  for (int n : {1, 2})
    if (wants(cfg, n))
      for (auto &d : enumerate_diagrams(n)) v.push_back(d);
  return v;
}

Checks annihilation_checks(const VerifyConfig &cfg) {
  Checks out;
  const auto f = units(index_set(-1, 1, 2));
  const std::vector<BasisVector> killers{BasisVector::unit({-2, 0, 0, 0}),
                                         BasisVector::unit({0, 0, 0, 0})};
  const char *names[] = {"N^-2", "1"};
  const auto ds = operator_diagrams(cfg);
  for (size_t k = 0; k < ds.size(); ++k)
    for (int side = 0; side < 2; ++side) {
      const std::string id = "annihilation.n" + std::to_string(ds[k].loops) + ".d" +
                             std::to_string(k) + (side == 0 ? ".left" : ".right");
      guarded(out, id, "Lbar vanishes on N^-2 and constant generators", [&] {
        const auto tab = side == 0 ? lbar_table(ds[k], killers, f) : lbar_table(ds[k], f, killers);
        std::vector<double> worst(2, 0.0);
        for (size_t i = 0; i < tab.size(); ++i)
          for (size_t j = 0; j < tab[i].size(); ++j)
            worst[side == 0 ? i : j] = std::max(worst[side == 0 ? i : j], tab[i][j].max_abs());
        return record(id, "Lbar vanishes on N^-2 and constant generators",
                      label(ds[k]) + " " + names[0] + "," + names[1] +
                          " against 2l<=2 |k|<=1",
                      worst, 1e-10, worst[0] < 1e-10 && worst[1] < 1e-10);
      });
    }
  return out;
}

// ---- 9 ----------------------------------------------------------------------
Checks operator_checks(const VerifyConfig &cfg) {
  Checks out;
  const BasisVector one = BasisVector::unit({0, 0, 0, 0});
  if (wants(cfg, 1))
    guarded(out, "operators.L1_unit", "L of 1 x 1 is 1 x 1 for one loop", [&] {
      const double dev = (L(one_loop(), one, one) - TensorBasisVector::product(one, one)).max_abs();
      return record("operators.L1_unit", "L of 1 x 1 is 1 x 1 for one loop", "n=1", {dev}, 1e-10,
                    dev < 1e-10);
    });
  if (wants(cfg, 2))
    guarded(out, "operators.magic", "two-loop Lbar operators agree", [&] {
      const auto ds = enumerate_diagrams(2);
      const auto f = units(index_set(-1, -1, 2));
      const auto A = lbar_table(ds[0], f, f), B = lbar_table(ds[1], f, f);
      double worst = 0.0;
      for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < f.size(); ++j) worst = std::max(worst, (A[i][j] - B[i][j]).max_abs());
      return record("operators.magic", "two-loop Lbar operators agree",
                    "all pairs 2l<=2 k=-1", {worst}, 1e-8, worst < 1e-8);
    });
  const auto ods = operator_diagrams(cfg);
  std::vector<cplx> mu1;
  for (size_t q = 0; q < ods.size(); ++q)
    for (int k : {1, 2}) {
      const auto &d = ods[q];
      const std::string id = "operators.scalar.n" + std::to_string(d.loops) + ".d" +
                             std::to_string(q) + ".k" + std::to_string(k);
      guarded(out, id, "L acts by a scalar on the generator", [&] {
        const auto s = scalar_action_check(d, k);
        if (d.loops == 2 && k == 1) mu1.push_back(s.mu);
        return record(id, "L acts by a scalar on the generator", label(d) + " k=" + std::to_string(k),
                      {s.mu.real(), s.mu.imag(), s.residual}, 1e-8, s.residual < 1e-8);
      });
    }
  if (mu1.size() == 2) {
    const double dmu = std::abs(mu1[0] - mu1[1]);
    out.push_back(record("operators.scalar.n2.k1_equal", "two-loop diagrams share the k=1 scalar",
                         "k=1", {dmu}, 1e-9, dmu < 1e-9));
  }
  std::mt19937_64 rng(cfg.seed * 9001);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> pick;
  auto random_vec = [&](bool hminus) {
    BasisVector v;
    for (int t = 0; t < 3; ++t) {
      const int tl = pick(rng) % 3;
      const int n = -tl + 2 * (pick(rng) % (tl + 1)), m = -tl + 2 * (pick(rng) % (tl + 1));
      const int k = hminus ? -1 - tl : -(pick(rng) % 3);
      const double re = nd(rng);
      const double im = nd(rng);
      v.add({k, tl, n, m}, cplx(re, im));
    }
    return v;
  };
  for (size_t q = 0; q < ods.size(); ++q)
    for (int s = 0; s < 3; ++s) {
      const auto &d = ods[q];
      const std::string id = "operators.duality.n" + std::to_string(d.loops) + ".d" +
                             std::to_string(q) + ".s" + std::to_string(s);
      const auto f1 = random_vec(false), f2 = random_vec(false);
      const auto p1 = random_vec(true), p2 = random_vec(true);
      guarded(out, id, "Lbar and Lacute are dual under the pairing", [&] {
        const double def = duality_check(d, f1, f2, p1, p2);
        return record(id, "Lbar and Lacute are dual under the pairing",
                      label(d) + " random inputs 2l<=2, rng seed=" + std::to_string(cfg.seed * 9001), {def},
                      1e-9, def < 1e-9);
      });
    }
  return out;
}

// ---- 10 ---------------------------------------------------------------------
Checks structure_checks(const VerifyConfig &cfg) {
  Checks out;
  guarded(out, "structure.degrees", "degree identities for every attachment word", [&] {
    int words = 0, bad = 0;
    std::vector<std::vector<int>> frontier{{}};
    for (int n = 1; n <= 5; ++n) {
      std::vector<std::vector<int>> next;
      for (const auto &w : frontier) {
        ++words;
        if (!degree_identities_hold(from_word(w))) ++bad;
        if (n < 5)
          for (int t = 0; t < kExternals; ++t) {
            auto w2 = w;
            w2.push_back(t);
            next.push_back(w2);
          }
      }
      frontier = std::move(next);
    }
    return record("structure.degrees", "degree identities for every attachment word",
                  "n<=5, all words", {static_cast<double>(words), static_cast<double>(bad)}, 0.0,
                  bad == 0);
  });
  guarded(out, "structure.two_loop_count", "exactly two two-loop diagrams", [&] {
    const auto c = enumerate_diagrams(2).size();
    return record("structure.two_loop_count", "exactly two two-loop diagrams", "n=2",
                  {static_cast<double>(c)}, 0.0, c == 2);
  });
  std::vector<BoxDiagram> ds;
  if (wants(cfg, 1)) ds.push_back(one_loop());
  if (wants(cfg, 2))
    for (auto &d : enumerate_diagrams(2)) ds.push_back(d);
  for (size_t k = 0; k < ds.size(); ++k) {
    const std::string id = "structure.radii.n" + std::to_string(ds[k].loops) + ".d" + std::to_string(k);
    guarded(out, id, "value does not depend on the radii", [&] {
      const auto a = assign_radii(ds[k], cfg.base, cfg.ratio);
      const auto b = assign_radii(ds[k], cfg.base * 1.3, cfg.ratio + 1.0);
      const auto p = sample_shared_point({a, b}, cfg.seed * 8000 + k);
      const GridSpec g = ds[k].loops == 1 ? cfg.grid1 : GridSpec{14, 8};
      const cplx va = quadrature_sum(ds[k], a, p, g), vb = quadrature_sum(ds[k], b, p, g);
      const double rel = std::abs(va - vb) / std::abs(va);
      return record(id, "value does not depend on the radii",
                    label(ds[k]) + " ratio " + str(cfg.ratio) + " vs " +
                        str(cfg.ratio + 1.0),
                    {va.real(), va.imag(), vb.real(), vb.imag(), rel}, 1e-8, rel < 1e-8);
    });
  }
  if (wants(cfg, 2)) {
    // exposed, not asserted: quadrature with two radii swapped against the order
    const auto d = enumerate_diagrams(2)[0];
    const auto a = assign_radii(d, cfg.base, cfg.ratio);
    const auto p = sample_point(a, cfg.seed * 8100);
    guarded(out, "structure.wrong_cycles", "radii swapped against the order (reported)", [&] {
      const cplx right = quadrature_sum(d, a, p, cfg.grid2);
      const auto w = wrong_cycle_experiment(d, a, p, cfg.grid2);
      return record("structure.wrong_cycles", "radii swapped against the order (reported)",
                    label(d), {w.value.real(), w.value.imag(), std::abs(w.value) / std::abs(right)},
                    0.0, true);
    });
  }
  return out;
}

}  // namespace

const char *criterion_title(int c) {
  switch (c) {
  case 1: return "normalization integral";
  case 2: return "orthogonality relations";
  case 3: return "1/N(Z-W) expansion";
  case 4: return "cross-evaluator agreement";
  case 5: return "magic identities";
  case 6: return "conformal covariance";
  case 7: return "harmonicity";
  case 8: return "annihilation";
  case 9: return "operator identities";
  case 10: return "structural";
  }
  return "?";
}

std::vector<CheckRecord> criterion_checks(int c, const VerifyConfig &cfg) {
  switch (c) {
  case 1: return normalization_checks(cfg);
  case 2: return orthogonality_checks(cfg);
  case 3: return expansion_checks(cfg);
  case 4: return crossmethod_checks(cfg);
  case 5: return magic_checks(cfg);
  case 6: return conformal_checks(cfg);
  case 7: return harmonic_checks(cfg);
  case 8: return annihilation_checks(cfg);
  case 9: return operator_checks(cfg);
  case 10: return structure_checks(cfg);
  }
  throw Error(ErrorKind::InvalidArgument, "criterion must be 1..10");
}

std::vector<std::string> suite_names() {
  return {"normalization", "orthogonality", "expansion", "crossmethod", "magic",
          "conformal",     "harmonic",      "operators", "structure",   "all"};
}

std::vector<int> suite_criteria(const std::string &s) {
  if (s == "normalization") return {1};
  if (s == "orthogonality") return {2};
  if (s == "expansion") return {3};
  if (s == "crossmethod") return {4};
  if (s == "magic") return {5};
  if (s == "conformal") return {6};
  if (s == "harmonic") return {7};
  if (s == "operators") return {8, 9};
  if (s == "structure") return {10};
  if (s == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + s + "'");
}

VerifyReport run_suite(const std::string &suite, const VerifyConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport r;
  r.suite = suite;
  r.config = cfg;
  for (int c : suite_criteria(suite))
    for (auto &rec : criterion_checks(c, cfg)) r.checks.push_back(std::move(rec));
  std::stable_sort(r.checks.begin(), r.checks.end(),
                   [](const CheckRecord &a, const CheckRecord &b) { return a.id < b.id; });
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

} // namespace magic
