#include "magic/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace magic {

namespace {

const CoeffIndex kOne{};

using Expansion1 = std::vector<std::pair<CoeffIndex, double>>;

// N^k1 t^l1_{n1 m1} * N^k2 t^l2_{n2 m2} in the basis
const Expansion1 &prod1(const CoeffIndex &a, const CoeffIndex &b) {
  thread_local std::map<std::pair<CoeffIndex, CoeffIndex>, Expansion1> cache;
  auto key = std::make_pair(a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Expansion1 e;
  const int n = a.twoN + b.twoN, m = a.twoM + b.twoM;
  for (int tl = std::abs(a.twoL - b.twoL); tl <= a.twoL + b.twoL; tl += 2) {
    if (std::abs(n) > tl || std::abs(m) > tl) continue;
    const double c =
        product_coefficient(a.twoL, a.twoN, a.twoM, b.twoL, b.twoN, b.twoM, tl, n, m);
    if (c != 0.0) e.push_back({CoeffIndex{a.k + b.k + (a.twoL + b.twoL - tl) / 2, tl, n, m}, c});
  }
  return cache.emplace(key, std::move(e)).first->second;
}

const CoeffIndex x11{0, 1, -1, -1}, x12{0, 1, -1, 1}, x21{0, 1, 1, -1}, x22{0, 1, 1, 1};
const CoeffIndex Nidx{1, 0, 0, 0};

}  // namespace

MultiPoly MultiPoly::constant(cplx c) {
  MultiPoly p;
  if (c != 0.0) p.terms[SlotKey{}] = c;
  return p;
}

MultiPoly MultiPoly::from_basis(int slot, const BasisVector &v) {
  MultiPoly p;
  for (const auto &[idx, c] : v.entries()) {
    SlotKey k{};
    k[slot] = idx;
    p.add(k, c);
  }
  return p;
}

void MultiPoly::add(const SlotKey &key, cplx c) {
  if (c == 0.0) return;
  terms[key] += c;
}

bool MultiPoly::depends_on(int slot) const {
  for (const auto &[k, c] : terms)
    if (k[slot] != kOne) return true;
  return false;
}

std::pair<int, int> MultiPoly::degree_range(int slot) const {
  int lo = 1 << 20, hi = -(1 << 20);
  for (const auto &[k, c] : terms) {
    lo = std::min(lo, k[slot].degree());
    hi = std::max(hi, k[slot].degree());
  }
  if (terms.empty()) return {0, 0};
  return {lo, hi};
}

int MultiPoly::max_twoL(int slot) const {
  int m = 0;
  for (const auto &[k, c] : terms) m = std::max(m, k[slot].twoL);
  return m;
}

double MultiPoly::max_abs() const {
  double m = 0.0;
  for (const auto &[k, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

void MultiPoly::prune(double drop) {
  std::erase_if(terms, [drop](const auto &kv) { return std::abs(kv.second) <= drop; });
}

MultiPoly MultiPoly::operator+(const MultiPoly &o) const {
  MultiPoly r = *this;
  for (const auto &[k, c] : o.terms) r.add(k, c);
  return r;
}

MultiPoly MultiPoly::operator*(cplx s) const {
  MultiPoly r;
  for (const auto &[k, c] : terms) r.add(k, c * s);
  return r;
}

MultiPoly MultiPoly::slice(int slot, const CoeffIndex &idx) const {
  MultiPoly r;
  for (const auto &[k, c] : terms)
    if (k[slot] == idx) {
      SlotKey k2 = k;
      k2[slot] = kOne;
      r.add(k2, c);
    }
  return r;
}

cplx MultiPoly::eval(const std::vector<std::pair<int, HMatrix>> &at) const {
  std::map<std::pair<int, int>, std::vector<cplx>> taus;
  std::map<int, cplx> norms;
  for (const auto &[s, X] : at) norms[s] = norm(X);
  cplx total = 0.0;
  for (const auto &[k, c] : terms) {
    cplx v = c;
    for (const auto &[s, X] : at) {
      const CoeffIndex &i = k[s];
      if (i == kOne) continue;
      auto &t = taus[{s, i.twoL}];
      if (t.empty()) t = tau_matrix(i.twoL, X);
      const int d = i.twoL + 1;
      v *= std::pow(norms[s], i.k) *
           t[static_cast<size_t>((i.twoN + i.twoL) / 2) * d + (i.twoM + i.twoL) / 2];
    }
    total += v;
  }
  return total;
}

MultiPoly multiply(const MultiPoly &a, const MultiPoly &b, const SlotFilter &f) {
  MultiPoly out;
  std::vector<int> both;
  std::vector<const Expansion1 *> exps;
  for (const auto &[ka, va] : a.terms)
    for (const auto &[kb, vb] : b.terms) {
      SlotKey base{};
      both.clear();
      exps.clear();
      bool dead = false;
      for (int s = 0; s < kSlots && !dead; ++s) {
        const bool ta = ka[s] != kOne, tb = kb[s] != kOne;
        if (ta && tb) {
          both.push_back(s);
          exps.push_back(&prod1(ka[s], kb[s]));
          if (exps.back()->empty()) dead = true;
        } else {
          base[s] = ta ? ka[s] : kb[s];
          if (s == f.slot && f.keep && !f.keep(base[s])) dead = true;
        }
      }
      if (dead) continue;
      const cplx v0 = va * vb;
      // odometer over the per-slot expansions
      std::vector<size_t> pos(both.size(), 0);
      while (true) {
        SlotKey key = base;
        double c = 1.0;
        bool ok = true;
        for (size_t j = 0; j < both.size(); ++j) {
          const auto &[idx, w] = (*exps[j])[pos[j]];
          if (both[j] == f.slot && f.keep && !f.keep(idx)) ok = false;
          key[both[j]] = idx;
          c *= w;
        }
        if (ok) out.add(key, v0 * c);
        size_t j = 0;
        while (j < both.size() && ++pos[j] == exps[j]->size()) pos[j++] = 0;
        if (j == both.size()) break;
      }
    }
  return out;
}

MultiPoly solid_edge(int inner, int outer, int twoLcap) {
  // sum t_{n m}(x) c(l, m, n) N(y)^{-1-2l} t_{-n,-m}(y)
  MultiPoly p;
  for (int tl = 0; tl <= twoLcap; ++tl)
    for (int n = -tl; n <= tl; n += 2)
      for (int m = -tl; m <= tl; m += 2) {
        SlotKey k{};
        k[inner] = CoeffIndex{0, tl, n, m};
        k[outer] = CoeffIndex{-1 - tl, tl, -n, -m};
        p.add(k, inverse_constant(tl, m, n));
      }
  return p;
}

MultiPoly dashed_edge(int a, int b) {
  MultiPoly p;
  auto put = [&](CoeffIndex ia, CoeffIndex ib, double c) {
    SlotKey k{};
    k[a] = ia;
    k[b] = ib;
    p.add(k, c);
  };
  put(Nidx, kOne, 1.0);
  put(kOne, Nidx, 1.0);
  put(x11, x22, -1.0);
  put(x22, x11, -1.0);
  put(x12, x21, 1.0);
  put(x21, x12, 1.0);
  return p;
}

void Network::eliminate(int slot, int twoLmax) {
  std::vector<MultiPoly> local;
  for (auto it = factors.begin(); it != factors.end();) {
    if (it->depends_on(slot)) {
      local.push_back(std::move(*it));
      it = factors.erase(it);
    } else {
      ++it;
    }
  }
  int lo = 0, hi = 0, neg = 0, pos = 0;
  for (const auto &f : local) {
    auto [a, b] = f.degree_range(slot);
    lo += a;
    hi += b;
  }
  std::vector<NetEdge> mine;
  for (auto it = edges.begin(); it != edges.end();) {
    if (it->inner == slot || it->outer == slot) {
      mine.push_back(*it);
      it = edges.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto &e : mine) {
    if (!e.solid) {
      hi += 2;
    } else if (e.outer == slot) {
      ++neg;
    } else {
      ++pos;
    }
  }
  int cap = twoLmax;
  if (neg > 0 && pos == 0) cap = hi + 4 - 2 * neg;
  if (pos > 0 && neg == 0) cap = -4 - lo;
  if (neg + pos > 0 && (neg == 0 || pos == 0) && cap > twoLmax)
    throw Error(ErrorKind::TruncationInsufficient,
                "elimination needs 2l up to " + std::to_string(cap));
  cap_log.push_back(neg + pos > 0 ? cap : -1);
  if (neg + pos > 0 && cap < 0) {
    // homogeneity cannot reach -4: the whole product vanishes
    factors.assign(1, MultiPoly{});
    return;
  }
  for (const auto &e : mine)
    local.push_back(e.solid ? solid_edge(e.inner, e.outer, cap) : dashed_edge(e.inner, e.outer));
  if (local.empty()) throw Error(ErrorKind::InvalidArgument, "slot has no factors");

  // remaining degree and spin after each prefix, for pruning
  const size_t n = local.size();
  std::sort(local.begin(), local.end(),
            [](const MultiPoly &x, const MultiPoly &y) { return x.terms.size() < y.terms.size(); });
  std::vector<int> rlo(n + 1, 0), rhi(n + 1, 0), rtl(n + 1, 0);
  for (size_t i = n; i-- > 0;) {
    auto [a, b] = local[i].degree_range(slot);
    rlo[i] = rlo[i + 1] + a;
    rhi[i] = rhi[i + 1] + b;
    rtl[i] = rtl[i + 1] + local[i].max_twoL(slot);
  }
  MultiPoly acc = local[0];
  for (size_t i = 1; i < n; ++i) {
    SlotFilter f{slot, [&, i](const CoeffIndex &c) {
                   const int d = c.degree();
                   return d + rlo[i + 1] <= -4 && d + rhi[i + 1] >= -4 && c.twoL <= rtl[i + 1];
                 }};
    acc = multiply(acc, local[i], f);
  }
  factors.push_back(acc.slice(slot, CoeffIndex{-2, 0, 0, 0}));
}

MultiPoly Network::result() const {
  MultiPoly acc = MultiPoly::constant(1.0);
  for (const auto &f : factors) acc = multiply(acc, f);
  for (const auto &e : edges) {
    if (e.solid)
      throw Error(ErrorKind::UnsupportedTopology, "solid edge left between free variables");
    acc = multiply(acc, dashed_edge(e.inner, e.outer));
  }
  return acc;
}

} // namespace magic
