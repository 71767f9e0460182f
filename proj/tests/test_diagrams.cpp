#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>
#include <set>

#include "magic/diagrams.hpp"

using namespace magic;

namespace {

const int T1 = kExternals, T2 = kExternals + 1, T3 = kExternals + 2;

std::vector<std::vector<int>> all_words(int len) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < len; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto &w : out)
      for (int t = 0; t < 4; ++t) {
        auto x = w;
        x.push_back(t);
        next.push_back(x);
      }
    out = next;
  }
  return out;
}

int count(const std::vector<Edge> &es, int a, int b) {
  Edge e = a < b ? Edge{a, b} : Edge{b, a};
  return static_cast<int>(std::count(es.begin(), es.end(), e));
}

} // namespace

TEST_CASE("one-loop diagram") {
  BoxDiagram d = one_loop();
  CHECK(d.solid_degree(T1) == 4);
  for (int v = 0; v < 4; ++v) {
    CHECK(d.solid_degree(v) == 1);
    CHECK(d.dashed_degree(v) == 0);
  }
  CHECK(d.precedes(W1, T1));
  CHECK(d.precedes(W2, T1));
  CHECK(d.precedes(T1, Z1));
  CHECK(d.precedes(T1, Z2));
  CHECK(d.precedes(W1, Z2));
  CHECK_FALSE(d.precedes(Z1, T1));
  CHECK_FALSE(d.precedes(W1, W2));
  CHECK(degree_identities_hold(d));
}

TEST_CASE("attaching at Z2 gives the displayed two-loop integrand") {
  BoxDiagram d = attach_slingshot(one_loop(), Z2);
  CHECK(d.solid.size() == 7);
  CHECK(count(d.solid, T2, Z2) == 1);
  CHECK(count(d.solid, T2, Z1) == 1);
  CHECK(count(d.solid, T2, W1) == 1);
  CHECK(count(d.solid, T1, T2) == 1);
  CHECK(count(d.solid, T1, Z1) == 1);
  CHECK(count(d.solid, T1, W1) == 1);
  CHECK(count(d.solid, T1, W2) == 1);
  CHECK(d.dashed.size() == 1);
  CHECK(count(d.dashed, Z1, W1) == 1);
  CHECK(d.precedes(T1, T2));
  auto a = assign_radii(d);
  CHECK(a.r[0] < a.r[1]);
  CHECK(a.rMin[1] == a.r[0]);
  CHECK(a.rMax[0] == a.r[1]);
  CHECK(a.rMax[1] == a.r[1]);
}

TEST_CASE("new relations follow the target") {
  BoxDiagram z1 = attach_slingshot(one_loop(), Z1);
  CHECK(z1.precedes(W2, T2));
  CHECK(z1.precedes(T2, Z1));
  CHECK(z1.precedes(T2, Z2));
  CHECK(z1.precedes(T1, T2));
  BoxDiagram w1 = attach_slingshot(one_loop(), W1);
  CHECK(w1.precedes(W1, T2));
  CHECK(w1.precedes(W2, T2));
  CHECK(w1.precedes(T2, Z2));
  CHECK(w1.precedes(T2, T1));
}

TEST_CASE("degree identities for every word up to five loops") {
  for (int len = 0; len <= 4; ++len)
    for (const auto &w : all_words(len)) {
      BoxDiagram d = from_word(w);
      CHECK(degree_identities_hold(d));
      for (int a = 0; a < d.vertex_count(); ++a) CHECK_FALSE(d.precedes(a, a));
    }
}

TEST_CASE("radii respect the order") {
  for (int len = 0; len <= 3; ++len)
    for (const auto &w : all_words(len)) {
      BoxDiagram d = from_word(w);
      auto a = assign_radii(d, 1.0, 2.0);
      for (int i = 0; i < d.loops; ++i)
        for (int j = 0; j < d.loops; ++j)
          if (d.precedes(kExternals + i, kExternals + j)) CHECK(a.r[i] < a.r[j]);
      for (int z = 0; z < 2; ++z) {
        CHECK(a.rMax[z] > 0.0);
        CHECK(a.rMin[z] > 0.0);
        CHECK(a.R[z] > a.rMax[z]);
        CHECK(a.Rin[z] < a.rMin[z]);
      }
    }
  auto one = assign_radii(one_loop(), 1.0, 2.0);
  CHECK(one.r[0] == 1.0);
  CHECK(one.rMax[0] == 1.0);
  CHECK(one.rMin[1] == 1.0);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_diagrams(1).size() == 1);
  auto two = enumerate_diagrams(2);
  CHECK(two.size() == 2);
  CHECK(is_isomorphic(from_word({Z2}), from_word({W2})));
  CHECK(is_isomorphic(from_word({Z1}), from_word({W1})));
  CHECK_FALSE(is_isomorphic(from_word({Z1}), from_word({Z2})));
  auto three = enumerate_diagrams(3);
  CHECK(three.size() > 2);
  CHECK(three.size() < 16);
  std::set<std::string> keys;
  for (const auto &d : three) keys.insert(canonical_form(d));
  CHECK(keys.size() == three.size());
}

TEST_CASE("ladder word gives a path of internals") {
  BoxDiagram d = from_word({Z2, Z2});
  CHECK(count(d.solid, T1, T2) == 1);
  CHECK(count(d.solid, T2, T3) == 1);
  CHECK(count(d.solid, T1, T3) == 0);
}

TEST_CASE("order reversal") {
  CHECK(is_isomorphic(reverse_order(one_loop()), one_loop()));
  for (const auto &w : all_words(2)) {
    BoxDiagram d = from_word(w);
    CHECK(is_isomorphic(reverse_order(reverse_order(d)), d));
    CHECK(degree_identities_hold(reverse_order(d)));
  }
}

TEST_CASE("normalization constants") {
  const cplx I(0, 1);
  const double p3 = kPi * kPi * kPi;
  CHECK(std::abs(normalization(one_loop()) - I / (2 * p3)) < 1e-18);
  CHECK(std::abs(normalization(from_word({Z2})) + 1.0 / (4 * p3 * p3)) < 1e-18);
  CHECK(std::abs(normalization(from_word({Z2, Z1})) + I / (8 * p3 * p3 * p3)) < 1e-20);
}

TEST_CASE("integrand is the product of edge factors") {
  std::mt19937_64 rng(21);
  EvalPoint p{test::random_matrix(rng), test::random_matrix(rng), test::random_matrix(rng),
              test::random_matrix(rng)};
  HMatrix T = test::random_matrix(rng);
  cplx want = 1.0 / (norm(p.Z1 - T) * norm(p.Z2 - T) * norm(p.W1 - T) * norm(p.W2 - T));
  CHECK(test::rel(integrand(one_loop(), p, {T}), want) < 1e-14);
  HMatrix U = test::random_matrix(rng);
  BoxDiagram d = from_word({Z2});
  cplx two = norm(p.Z1 - p.W1) /
             (norm(T - U) * norm(p.Z1 - T) * norm(p.W1 - T) * norm(p.W2 - T) * norm(p.Z1 - U) *
              norm(p.W1 - U) * norm(p.Z2 - U));
  CHECK(test::rel(integrand(d, p, {T, U}), two) < 1e-13);
  CHECK(std::abs(integrand(one_loop(), p, {T})) > 0.0);
  CHECK_THROWS_AS(integrand(one_loop(), p, {p.Z1}), Error);
}

TEST_CASE("sampled points satisfy the domain constraints") {
  for (const auto &d : enumerate_diagrams(3)) {
    auto a = assign_radii(d);
    for (std::uint64_t s = 0; s < 5; ++s) CHECK_NOTHROW(validate_point(a, sample_point(a, s)));
  }
  auto a = assign_radii(one_loop());
  EvalPoint bad = sample_point(a, 1);
  bad.Z1 = HMatrix::identity() * 0.5;
  CHECK_THROWS_AS(validate_point(a, bad), Error);
}
