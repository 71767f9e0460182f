#include "magic/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace magic {

namespace {

// Factors of the integrand split by which internals they touch.
struct Split {
  cplx ext = 1.0;                       // external-external dashed factors
  std::vector<std::vector<std::pair<int, bool>>> local;  // per internal: (external, solid?)
  std::vector<std::pair<int, bool>> coupling;            // T1-T2 edges (solid?), n == 2 only
};

Split split_edges(const BoxDiagram &d, const EvalPoint &p) {
  Split s;
  s.local.resize(d.loops);
  auto put = [&](int a, int b, bool solid) {
    if (!is_internal(a) && !is_internal(b)) {
      cplx n = norm(p.external(a) - p.external(b));
      s.ext *= solid ? 1.0 / n : n;
    } else if (is_internal(a) && is_internal(b)) {
      s.coupling.push_back({0, solid});
    } else {
      const int t = is_internal(a) ? a : b, e = is_internal(a) ? b : a;
      s.local[t - kExternals].push_back({e, solid});
    }
  };
  for (auto [a, b] : d.solid) put(a, b, true);
  for (auto [a, b] : d.dashed) put(a, b, false);
  return s;
}

// weight * product of local factors at every node of the rule
std::vector<cplx> node_values(const CycleRule &rule, const std::vector<std::pair<int, bool>> &loc,
                              const EvalPoint &p) {
  std::vector<cplx> v(rule.z.size());
  for (size_t i = 0; i < rule.z.size(); ++i) {
    cplx f = rule.w[i];
    for (auto [e, solid] : loc) {
      cplx n = norm(rule.z[i] - p.external(e));
      f *= solid ? 1.0 / n : n;
    }
    v[i] = f;
  }
  return v;
}

struct Prepared {
  Split split;
  std::vector<CycleRule> rules;
  std::vector<std::vector<cplx>> vals;
  std::vector<cplx> nodeN;  // N(T) on the second rule, n == 2
};

Prepared prepare(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                 const GridSpec &grid) {
  if (d.loops < 1 || d.loops > 2)
    throw Error(ErrorKind::InvalidArgument, "tensor quadrature needs 1 or 2 loops");
  Prepared pr;
  pr.split = split_edges(d, p);
  for (int k = 0; k < d.loops; ++k) {
    pr.rules.push_back(make_cycle_rule(a.r[k], grid));
    pr.vals.push_back(node_values(pr.rules.back(), pr.split.local[k], p));
  }
  return pr;
}

// Coupling between T1 = x and T2 = y over the precomputed edge list.
inline cplx couple(const std::vector<std::pair<int, bool>> &edges, const HMatrix &x,
                   const HMatrix &y) {
  cplx n = norm(x - y), f = 1.0;
  for (auto [unused, solid] : edges) {
    (void)unused;
    f *= solid ? 1.0 / n : n;
  }
  return f;
}

cplx row_sum(const Prepared &pr, size_t i) {
  const auto &y = pr.rules[1].z;
  const auto &vb = pr.vals[1];
  const HMatrix &x = pr.rules[0].z[i];
  cplx acc = 0.0;
  for (size_t j = 0; j < y.size(); ++j) acc += vb[j] * couple(pr.split.coupling, x, y[j]);
  return acc * pr.vals[0][i];
}

cplx sum_prepared(const Prepared &pr, bool parallel) {
  const size_t n0 = pr.vals[0].size();
  if (pr.rules.size() == 1) {
    cplx s = 0.0;
    for (auto v : pr.vals[0]) s += v;
    return s;
  }
  // fixed row blocks, summed in order afterwards
  constexpr int kBlocks = 64;
  std::vector<cplx> part(kBlocks, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int b = 0; b < kBlocks; ++b) {
    const size_t lo = n0 * b / kBlocks, hi = n0 * (b + 1) / kBlocks;
    cplx acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += row_sum(pr, i);
    part[b] = acc;
  }
  cplx s = 0.0;
  for (auto v : part) s += v;
  return s;
}

}  // namespace

CycleAssignment merge_assignments(const std::vector<CycleAssignment> &as) {
  if (as.empty()) throw Error(ErrorKind::InvalidArgument, "no assignments");
  CycleAssignment m = as.front();
  for (const auto &a : as)
    for (int z = 0; z < 2; ++z) {
      m.rMax[z] = std::max(m.rMax[z], a.rMax[z]);
      m.rMin[z] = std::min(m.rMin[z], a.rMin[z]);
    }
  return m;
}

EvalPoint sample_shared_point(const std::vector<CycleAssignment> &as, std::uint64_t seed) {
  return sample_point(merge_assignments(as), seed);
}

cplx quadrature_sum(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                    const GridSpec &grid) {
  auto pr = prepare(d, a, p, grid);
  return sum_prepared(pr, true) * pr.split.ext * normalization(d);
}

cplx quadrature_sum_serial(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                           const GridSpec &grid) {
  auto pr = prepare(d, a, p, grid);
  return sum_prepared(pr, false) * pr.split.ext * normalization(d);
}

EvalResult eval_quadrature(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                           const GridSpec &grid, double tol) {
  validate_point(a, p);
  EvalResult r;
  r.method = Method::quadrature;
  r.value = quadrature_sum(d, a, p, grid);
  const GridSpec g2 = coarser_grid(grid);
  r.error = std::abs(r.value - quadrature_sum(d, a, p, g2));
  std::int64_t nodes = static_cast<std::int64_t>(grid.periodic) * grid.periodic *
                       grid.periodic * grid.gauss;
  r.cost = d.loops == 1 ? nodes : nodes * nodes;
  std::ostringstream m;
  m << "grid=" << grid.periodic << "x" << grid.gauss << " coarse=" << g2.periodic << "x"
    << g2.gauss;
  r.meta = m.str();
  if (tol > 0 && r.error > tol * std::abs(r.value))
    throw Error(ErrorKind::GridTooCoarse, "refinement difference " + std::to_string(r.error) +
                                              " exceeds tolerance");
  return r;
}

// ---- Monte Carlo ------------------------------------------------------------

EvalResult eval_montecarlo(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                           std::int64_t samples, std::uint64_t seed) {
  validate_point(a, p);
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
  const int n = d.loops;
  constexpr std::int64_t kChunk = 1 << 14;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  struct Acc {
    cplx s{};
    double s2 = 0.0;
  };
  std::vector<Acc> acc(static_cast<size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(ss);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
    std::vector<HMatrix> t(n);
    const std::int64_t lo = c * kChunk, hi = std::min(samples, lo + kChunk);
    Acc local;
    for (std::int64_t s = lo; s < hi; ++s) {
      cplx w = 1.0;
      for (int k = 0; k < n; ++k) {
        CyclePoint cp;
        cp.R = a.r[k];
        cp.psi = unif(rng);
        double nn = 0.0;
        for (auto &x : cp.s3) {
          x = gauss(rng);
          nn += x * x;
        }
        nn = std::sqrt(nn);
        for (auto &x : cp.s3) x /= nn;
        t[k] = cp.embed();
        const double r2 = cp.R * cp.R;
        w *= r2 * r2 * std::polar(1.0, 4.0 * cp.psi);
      }
      const cplx v = w * integrand(d, p, t);
      local.s += v;
      local.s2 += std::norm(v);
    }
    acc[static_cast<size_t>(c)] = local;
  }
  cplx s = 0.0;
  double s2 = 0.0;
  for (const auto &x : acc) {
    s += x.s;
    s2 += x.s2;
  }
  const double N = static_cast<double>(samples);
  EvalResult r;
  r.method = Method::montecarlo;
  r.value = s / N;
  const double var = std::max(0.0, (s2 - N * std::norm(r.value)) / (N - 1.0));
  r.error = std::sqrt(var / N);
  r.cost = samples;
  r.meta = "samples=" + std::to_string(samples) + " seed=" + std::to_string(seed);
  return r;
}

// ---- spectral elimination ---------------------------------------------------

namespace {

// product of a list of factors; the last multiply keeps only what `keep` wants
BasisVector product(const std::vector<BasisVector> &fs, const KeepFn &keep = {}) {
  BasisVector acc = BasisVector::unit(CoeffIndex{0, 0, 0, 0});
  for (size_t i = 0; i < fs.size(); ++i)
    acc = multiply(acc, fs[i], i + 1 == fs.size() ? keep : KeepFn{});
  return acc;
}

// I_v[F(v) / N(v - u)] as a function of u, v inside u, spins up to twoLmax
BasisVector solid_message(const BasisVector &F, int twoLmax) {
  BasisVector g;
  for (int tl = 0; tl <= twoLmax; ++tl) {
    auto it = F.blocks.find({-2 - tl, tl});
    if (it == F.blocks.end()) continue;
    const int d = tl + 1;
    auto &b = g.block(-1 - tl, tl);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int n = 2 * i - tl, m = 2 * j - tl;  // F index; the paired t has (-n, -m)
        b[static_cast<size_t>(i) * d + j] = it->second[static_cast<size_t>(i) * d + j] *
                                             pairing_value(tl, n, m) *
                                             inverse_constant(tl, -m, -n);
      }
  }
  return g;
}

// separable terms (a(v), b(u)) of one edge between v and u, v inside u
std::vector<std::pair<BasisVector, BasisVector>> edge_terms(bool solid, int twoLmax) {
  std::vector<std::pair<BasisVector, BasisVector>> t;
  if (solid) {
    for (int tl = 0; tl <= twoLmax; ++tl)
      for (int n = -tl; n <= tl; n += 2)
        for (int m = -tl; m <= tl; m += 2)
          t.push_back({BasisVector::unit({0, tl, n, m}),
                       BasisVector::unit({-1 - tl, tl, -n, -m}, inverse_constant(tl, m, n))});
    return t;
  }
  // N(v - u) = N(v) + N(u) - v11 u22 - v22 u11 + v12 u21 + v21 u12
  const BasisVector one = BasisVector::unit({0, 0, 0, 0});
  t.push_back({BasisVector::unit({1, 0, 0, 0}), one});
  t.push_back({one, BasisVector::unit({1, 0, 0, 0})});
  t.push_back({BasisVector::unit({0, 1, -1, -1}), BasisVector::unit({0, 1, 1, 1}, -1.0)});
  t.push_back({BasisVector::unit({0, 1, 1, 1}), BasisVector::unit({0, 1, -1, -1}, -1.0)});
  t.push_back({BasisVector::unit({0, 1, -1, 1}), BasisVector::unit({0, 1, 1, -1})});
  t.push_back({BasisVector::unit({0, 1, 1, -1}), BasisVector::unit({0, 1, -1, 1})});
  return t;
}

}  // namespace

cplx spectral_value(const BoxDiagram &d, const EvalPoint &p, int twoLmax) {
  return spectral_value(d, assign_radii(d), p, twoLmax);
}

cplx spectral_value(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                    int twoLmax) {
  const int n = d.loops;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a.r[x] < a.r[y]; });
  std::vector<char> done(n, 0);
  std::vector<std::vector<BasisVector>> inbox(n);

  cplx value = 1.0;
  for (auto [u, v] : d.dashed)
    if (!is_internal(u) && !is_internal(v)) value *= norm(p.external(u) - p.external(v));
  for (auto [u, v] : d.solid)
    if (!is_internal(u) && !is_internal(v)) value /= norm(p.external(u) - p.external(v));

  for (int k : order) {
    const int v = kExternals + k;
    std::vector<BasisVector> factors = std::move(inbox[k]);
    int target = -1;
    std::vector<bool> to_target;  // edge kinds toward the pending neighbour
    auto visit = [&](int a0, int b0, bool solid) {
      if (a0 != v && b0 != v) return;
      const int u = a0 == v ? b0 : a0;
      if (!is_internal(u)) {
        const HMatrix &Y = p.external(u);
        if (!solid)
          factors.push_back(dashed_poly(Y));
        else if (d.precedes(u, v))
          factors.push_back(inside_series(Y, twoLmax));
        else if (d.precedes(v, u))
          factors.push_back(outside_series(Y, twoLmax));
        else
          throw Error(ErrorKind::UnsupportedTopology, "solid edge between incomparable vertices");
        return;
      }
      if (done[u - kExternals]) return;  // already folded into a message
      if (target != -1 && target != u)
        throw Error(ErrorKind::UnsupportedTopology,
                    vertex_name(v) + " couples to two pending internals");
      if (solid && !d.precedes(v, u))
        throw Error(ErrorKind::UnsupportedTopology, "solid edge against the radius order");
      target = u;
      to_target.push_back(solid);
    };
    for (auto [a0, b0] : d.solid) visit(a0, b0, true);
    for (auto [a0, b0] : d.dashed) visit(a0, b0, false);
    done[k] = 1;

    if (target < 0) {
      // last vertex of its component: pair the two halves of the product
      if (factors.empty()) throw Error(ErrorKind::UnsupportedTopology, "isolated internal");
      const size_t h = factors.size() / 2;
      std::vector<BasisVector> lo(factors.begin(), factors.begin() + h),
          hi(factors.begin() + h, factors.end());
      value *= lo.empty() ? integrate(product(hi)) : pairing(product(lo), product(hi));
      continue;
    }

    const int nsolid = static_cast<int>(std::count(to_target.begin(), to_target.end(), true));
    if (nsolid > 1)
      throw Error(ErrorKind::UnsupportedTopology, "multiple solid edges between two internals");
    if (nsolid == 1 && to_target.size() == 1) {
      auto F = product(factors, [twoLmax](int kk, int tl) { return tl <= twoLmax && kk == -2 - tl; });
      inbox[target - kExternals].push_back(solid_message(F, twoLmax));
      continue;
    }
    // general separable coupling
    std::vector<std::pair<BasisVector, BasisVector>> terms{
        {BasisVector::unit({0, 0, 0, 0}), BasisVector::unit({0, 0, 0, 0})}};
    for (bool solid : to_target) {
      std::vector<std::pair<BasisVector, BasisVector>> next;
      for (const auto &[x, y] : terms)
        for (const auto &[ex, ey] : edge_terms(solid, twoLmax))
          next.push_back({multiply(x, ex), multiply(y, ey)});
      terms = std::move(next);
    }
    const BasisVector F = product(factors);
    BasisVector g;
    for (const auto &[x, y] : terms) {
      const cplx c = pairing(F, x);
      if (c != 0.0) g += y * c;
    }
    inbox[target - kExternals].push_back(g);
  }
  return value;
}

EvalResult eval_spectral(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                         int Lmax, double tol) {
  validate_point(a, p);
  if (Lmax < 1) throw Error(ErrorKind::InvalidArgument, "Lmax must be at least 1");
  EvalResult r;
  r.method = Method::spectral;
  r.value = spectral_value(d, a, p, 2 * Lmax);
  r.error = std::abs(r.value - spectral_value(d, a, p, 2 * Lmax - 2));
  r.cost = 2 * Lmax;
  r.meta = "Lmax=" + std::to_string(Lmax);
  if (tol > 0 && r.error > tol * std::abs(r.value))
    throw Error(ErrorKind::TruncationInsufficient,
                "tail estimate " + std::to_string(r.error) + " exceeds tolerance");
  return r;
}

// ---- differential checks ----------------------------------------------------

double laplacian_residual(const std::function<cplx(const HMatrix &)> &f, const HMatrix &Z,
                          double hrel) {
  const double s = op_norm(Z);
  const double h = hrel * s;
  const auto c = Z.coords();
  const cplx f0 = f(Z);
  cplx lap = 0.0;
  for (int k = 0; k < 4; ++k) {
    auto cp = c, cm = c;
    cp[k] += h;
    cm[k] -= h;
    lap += f(HMatrix::from_coords(cp)) - 2.0 * f0 + f(HMatrix::from_coords(cm));
  }
  lap /= h * h;
  return std::abs(lap) * s * s / std::abs(f0);
}

double laplacian_residual(const PointFunction &l, const EvalPoint &p, int var, double hrel) {
  auto f = [&](const HMatrix &Y) {
    EvalPoint q = p;
    switch (var) {
    case Vertex::Z1: q.Z1 = Y; break;
    case Vertex::Z2: q.Z2 = Y; break;
    case Vertex::W1: q.W1 = Y; break;
    case Vertex::W2: q.W2 = Y; break;
    default: throw Error(ErrorKind::InvalidArgument, "variable must be an external");
    }
    return l(q);
  };
  return laplacian_residual(f, p.external(var), hrel);
}

EvalPoint transform_point(const GroupElement &h, const EvalPoint &p) {
  return {fractional_linear(h, p.Z1), fractional_linear(h, p.Z2), fractional_linear(h, p.W1),
          fractional_linear(h, p.W2)};
}

cplx conformal_factor(const GroupElement &h, const EvalPoint &p) {
  return norm(h.ai - p.Z1 * h.ci) * norm(h.c * p.Z2 + h.d) * norm(h.c * p.W1 + h.d) *
         norm(h.ai - p.W2 * h.ci);
}

double conformal_check(const CycleAssignment &a, const EvalPoint &p, const GroupElement &h,
                       const PointFunction &l) {
  const EvalPoint q = transform_point(h, p);
  validate_point(a, q);
  const cplx lhs = l(q);
  const cplx rhs = conformal_factor(h, p) * l(p);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

CycleAssignment inverted_assignment(const CycleAssignment &a) {
  CycleAssignment b;
  for (double r : a.r) b.r.push_back(1.0 / r);
  for (int z = 0; z < 2; ++z) {
    b.rMax[z] = a.rMin[z] > 0 && std::isfinite(a.rMin[z]) ? 1.0 / a.rMin[z] : 0.0;
    b.rMin[z] = a.rMax[z] > 0 ? 1.0 / a.rMax[z] : std::numeric_limits<double>::infinity();
    b.R[z] = 1.0 / a.Rin[z];
    b.Rin[z] = 1.0 / a.R[z];
  }
  return b;
}

double inversion_check(const BoxDiagram &d, const EvalPoint &q, int Lmax) {
  const cplx lhs = spectral_value(d, q, 2 * Lmax);
  const BoxDiagram rd = reverse_order(d);
  // Z_i = q.Z_i^{-1}, W_i = q.W_i^{-1}; l~ takes (W1, W2; Z1, Z2)
  const HMatrix Zi1 = invert(q.Z1), Zi2 = invert(q.Z2), Wi1 = invert(q.W1), Wi2 = invert(q.W2);
  const EvalPoint rp{Wi1, Wi2, Zi1, Zi2};
  const cplx rhs = norm(Wi1) * norm(Wi2) * spectral_value(rd, rp, 2 * Lmax) * norm(Zi1) * norm(Zi2);
  return std::abs(lhs - rhs) / std::abs(lhs);
}

EvalResult wrong_cycle_experiment(const BoxDiagram &d, const CycleAssignment &a,
                                  const EvalPoint &p, const GridSpec &grid) {
  if (d.loops != 2) throw Error(ErrorKind::InvalidArgument, "experiment needs two loops");
  CycleAssignment b = a;
  std::swap(b.r[0], b.r[1]);
  EvalResult r;
  r.method = Method::quadrature;
  r.value = quadrature_sum(d, b, p, grid);
  r.error = std::abs(r.value - quadrature_sum(d, b, p, coarser_grid(grid)));
  r.meta = "radii swapped";
  return r;
}

} // namespace magic
