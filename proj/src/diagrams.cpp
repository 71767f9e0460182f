#include "magic/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace magic {

std::string vertex_name(int v) {
  static const char *ext[4] = {"Z1", "Z2", "W1", "W2"};
  if (v < kExternals) return ext[v];
  return "T" + std::to_string(v - kExternals + 1);
}

int vertex_from_name(const std::string &s) {
  static const char *ext[4] = {"Z1", "Z2", "W1", "W2"};
  for (int i = 0; i < 4; ++i)
    if (s == ext[i]) return i;
  if (s.size() > 1 && s[0] == 'T') {
    int k = std::stoi(s.substr(1));
    if (k >= 1) return kExternals + k - 1;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + s + "'");
}

int BoxDiagram::solid_degree(int v) const {
  int c = 0;
  for (const auto &[a, b] : solid) c += (a == v) + (b == v);
  return c;
}

int BoxDiagram::dashed_degree(int v) const {
  int c = 0;
  for (const auto &[a, b] : dashed) c += (a == v) + (b == v);
  return c;
}

namespace {

Edge edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

void close_order(std::vector<std::vector<char>> &less) {
  const size_t n = less.size();
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (less[i][k])
        for (size_t j = 0; j < n; ++j)
          if (less[k][j]) less[i][j] = 1;
}

struct SlingshotRule {
  int adjacent[2];
  std::vector<int> below;  // externals preceding T_n
  std::vector<int> above;  // externals following T_n
};

// One row per target; the dashed edge joins the two adjacent externals.
const SlingshotRule &rule_for(int target) {
  static const SlingshotRule rules[4] = {
      {{W2, Z2}, {W2}, {Z1, Z2}},      // Z1
      {{Z1, W1}, {W1}, {Z1, Z2}},      // Z2
      {{W2, Z2}, {W1, W2}, {Z2}},      // W1
      {{Z1, W1}, {W1, W2}, {Z1}},      // W2
  };
  return rules[target];
}

} // namespace

BoxDiagram one_loop() {
  BoxDiagram d;
  d.loops = 1;
  const int T = kExternals;
  for (int v = 0; v < kExternals; ++v) d.solid.push_back(edge(v, T));
  std::sort(d.solid.begin(), d.solid.end());
  d.less.assign(5, std::vector<char>(5, 0));
  d.less[W1][T] = d.less[W2][T] = 1;
  d.less[T][Z1] = d.less[T][Z2] = 1;
  close_order(d.less);
  return d;
}

BoxDiagram attach_slingshot(const BoxDiagram &d, int target) {
  if (target < 0 || target >= kExternals)
    throw Error(ErrorKind::InvalidArgument, "slingshot target must be external");
  const int t = d.vertex_count();
  auto rename = [&](int v) { return v == target ? t : v; };
  BoxDiagram r;
  r.loops = d.loops + 1;
  for (const auto &[a, b] : d.solid) r.solid.push_back(edge(rename(a), rename(b)));
  for (const auto &[a, b] : d.dashed) r.dashed.push_back(edge(rename(a), rename(b)));
  const int n = t + 1;
  r.less.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b)
      if (d.less[a][b]) r.less[rename(a)][rename(b)] = 1;
  const SlingshotRule &rule = rule_for(target);
  r.solid.push_back(edge(t, rule.adjacent[0]));
  r.solid.push_back(edge(t, rule.adjacent[1]));
  r.solid.push_back(edge(t, target));
  r.dashed.push_back(edge(rule.adjacent[0], rule.adjacent[1]));
  for (int v : rule.below) r.less[v][t] = 1;
  for (int v : rule.above) r.less[t][v] = 1;
  close_order(r.less);
  std::sort(r.solid.begin(), r.solid.end());
  std::sort(r.dashed.begin(), r.dashed.end());
  r.history = d.history;
  r.history.push_back(target);
  return r;
}

BoxDiagram from_word(const std::vector<int> &word) {
  BoxDiagram d = one_loop();
  for (int t : word) d = attach_slingshot(d, t);
  return d;
}

bool degree_identities_hold(const BoxDiagram &d) {
  int total = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    int diff = d.solid_degree(v) - d.dashed_degree(v);
    total += diff;
    if (diff != (is_internal(v) ? 4 : 1)) return false;
  }
  return total == 4 * d.loops + 4;
}

BoxDiagram reverse_order(const BoxDiagram &d) {
  static const int swap_ext[4] = {W1, W2, Z1, Z2};
  auto rl = [&](int v) { return v < kExternals ? swap_ext[v] : v; };
  BoxDiagram r;
  r.loops = d.loops;
  for (const auto &[a, b] : d.solid) r.solid.push_back(edge(rl(a), rl(b)));
  for (const auto &[a, b] : d.dashed) r.dashed.push_back(edge(rl(a), rl(b)));
  std::sort(r.solid.begin(), r.solid.end());
  std::sort(r.dashed.begin(), r.dashed.end());
  const int n = d.vertex_count();
  r.less.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (d.less[a][b]) r.less[rl(b)][rl(a)] = 1;
  return r;
}

namespace {

std::vector<int> encode(const BoxDiagram &d, const std::vector<int> &perm) {
  // perm maps internal index i to its new internal index
  auto p = [&](int v) { return v < kExternals ? v : kExternals + perm[v - kExternals]; };
  std::vector<int> code;
  auto push_edges = [&](const std::vector<Edge> &es) {
    std::vector<Edge> m;
    for (const auto &[a, b] : es) m.push_back(edge(p(a), p(b)));
    std::sort(m.begin(), m.end());
    code.push_back(static_cast<int>(m.size()));
    for (const auto &[a, b] : m) {
      code.push_back(a);
      code.push_back(b);
    }
  };
  push_edges(d.solid);
  push_edges(d.dashed);
  const int n = d.vertex_count();
  std::vector<int> inv(n);
  for (int v = 0; v < n; ++v) inv[p(v)] = v;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) code.push_back(d.less[inv[a]][inv[b]]);
  return code;
}

} // namespace

std::string canonical_form(const BoxDiagram &d) {
  std::vector<int> perm(d.loops);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    auto code = encode(d, perm);
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::ostringstream os;
  os << d.loops << ":";
  for (size_t i = 0; i < best.size(); ++i) os << (i ? "," : "") << best[i];
  return os.str();
}

bool is_isomorphic(const BoxDiagram &a, const BoxDiagram &b) {
  return a.loops == b.loops && canonical_form(a) == canonical_form(b);
}

std::vector<BoxDiagram> enumerate_diagrams(int n) {
  if (n < 1 || n > 6) throw Error(ErrorKind::InvalidArgument, "loops must be in 1..6");
  std::vector<BoxDiagram> level{one_loop()};
  for (int k = 2; k <= n; ++k) {
    std::vector<BoxDiagram> next;
    std::set<std::string> seen;
    for (const auto &d : level)
      for (int t = 0; t < kExternals; ++t) {
        BoxDiagram e = attach_slingshot(d, t);
        if (seen.insert(canonical_form(e)).second) next.push_back(std::move(e));
      }
    level = std::move(next);
  }
  return level;
}

CycleAssignment assign_radii(const BoxDiagram &d, double base, double ratio) {
  if (!(ratio > 1.0) || !(base > 0.0))
    throw Error(ErrorKind::InvalidArgument, "need base > 0 and ratio > 1");
  const int n = d.loops;
  std::vector<int> rank(n, 0);
  // longest chain below each internal; the order is a DAG
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d.less[kExternals + j][kExternals + i] && rank[i] < rank[j] + 1) {
          rank[i] = rank[j] + 1;
          changed = true;
        }
  }
  CycleAssignment a;
  a.r.resize(n);
  std::vector<int> seen_at_rank(n + 1, 0);
  for (int i = 0; i < n; ++i)
    a.r[i] = base * std::pow(ratio, rank[i]) * (1.0 + 1e-3 * seen_at_rank[rank[i]]++);
  double top = *std::max_element(a.r.begin(), a.r.end());
  double bottom = *std::min_element(a.r.begin(), a.r.end());
  for (int z = 0; z < 2; ++z) {
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (d.less[kExternals + k][Z1 + z]) mx = std::max(mx, a.r[k]);
      if (d.less[W1 + z][kExternals + k]) mn = std::min(mn, a.r[k]);
    }
    a.rMax[z] = mx;
    a.rMin[z] = mn;
    a.R[z] = top * ratio;
    a.Rin[z] = bottom / ratio;
  }
  return a;
}

const HMatrix &EvalPoint::external(int v) const {
  switch (v) {
  case Vertex::Z1: return Z1;
  case Vertex::Z2: return Z2;
  case Vertex::W1: return W1;
  default: return this->W2;
  }
}

EvalPoint sample_point(const CycleAssignment &a, std::uint64_t seed, double zf, double wf) {
  EvalPoint p;
  const std::uint64_t s = seed * 4 + 0x9e3779b97f4a7c15ULL;
  p.Z1 = random_unitary(s) * (zf * a.rMax[0]);  // NOLINT
  p.Z2 = random_unitary(s + 1) * (zf * a.rMax[1]);
  p.W1 = random_unitary(s + 2) * (wf * a.rMin[0]);
  p.W2 = random_unitary(s + 3) * (wf * a.rMin[1]);
  return p;
}

void validate_point(const CycleAssignment &a, const EvalPoint &p, double margin) {
  for (int z = 0; z < 2; ++z) {
    auto s = singular_values(p.external(Z1 + z));
    if (!(s[1] > a.rMax[z] * (1.0 + margin)))
      throw Error(ErrorKind::DomainViolation, vertex_name(Z1 + z) + " is not outside radius " +
                                                  std::to_string(a.rMax[z]));
    auto w = singular_values(p.external(W1 + z));
    if (!(w[0] < a.rMin[z] * (1.0 - margin)))
      throw Error(ErrorKind::DomainViolation, vertex_name(W1 + z) + " is not inside radius " +
                                                  std::to_string(a.rMin[z]));
  }
}

cplx integrand(const BoxDiagram &d, const EvalPoint &p, const std::vector<HMatrix> &t) {
  if (static_cast<int>(t.size()) != d.loops)
    throw Error(ErrorKind::InvalidArgument, "need one matrix per internal vertex");
  auto val = [&](int v) -> const HMatrix & {
    return v < kExternals ? p.external(v) : t[v - kExternals];
  };
  cplx num = 1.0, den = 1.0;
  for (const auto &[a, b] : d.solid) {
    HMatrix diff = val(a) - val(b);
    cplx n = norm(diff);
    double s = diff.max_abs();
    if (n == 0.0 || std::abs(n) <= 1e-14 * s * s)
      throw Error(ErrorKind::SingularConfiguration,
                  "N(" + vertex_name(a) + " - " + vertex_name(b) + ") vanishes");
    den *= n;
  }
  for (const auto &[a, b] : d.dashed) num *= norm(val(a) - val(b));
  return num / den;
}

cplx normalization(const BoxDiagram &d) {
  const cplx f(0.0, 1.0 / (2.0 * kPi * kPi * kPi));
  cplx r = 1.0;
  for (int i = 0; i < d.loops; ++i) r *= f;
  return r;
}

} // namespace magic
