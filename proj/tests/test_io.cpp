#include "doctest.h"
#include "helpers.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "magic/eval.hpp"
#include "magic/io.hpp"

using namespace magic;

namespace {

std::vector<std::vector<int>> words_up_to(int len) {
  std::vector<std::vector<int>> all{{}}, layer{{}};
  for (int i = 0; i < len; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto &w : layer)
      for (int t = 0; t < kExternals; ++t) {
        auto w2 = w;
        w2.push_back(t);
        next.push_back(w2);
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

void same_diagram(const BoxDiagram &a, const BoxDiagram &b) {
  CHECK(a.loops == b.loops);
  CHECK(a.solid == b.solid);
  CHECK(a.dashed == b.dashed);
  CHECK(a.less == b.less);
}

} // namespace

TEST_CASE("basis vector json round trip") {
  BasisVector v;
  v.add({-1, 0, 0, 0}, {0.5, -0.25});
  v.add({2, 3, -1, 3}, {1e-300, 7.0});
  v.add({-4, 2, 2, -2}, {0.1, 0.2});
  const json j = to_json(v);
  CHECK(j.size() == 3);
  CHECK(j[0].contains("twoL"));
  const BasisVector w = basis_from_json(json::parse(j.dump()));
  CHECK((v - w).max_abs() == 0.0);
  CHECK_THROWS_AS(basis_from_json(json::parse(R"([{"k":0,"twoL":1,"twoN":0,"twoM":1,"re":1,"im":0}])")),
                  Error);
}

TEST_CASE("tensor json round trip") {
  TensorBasisVector t;
  t.space = TensorSpace::Hminus;
  t.add({-1, 0, 0, 0}, {-2, 1, 1, -1}, {0.3, 0.1});
  t.add({-3, 2, 0, 2}, {-1, 0, 0, 0}, {-1.0, 0.0});
  const TensorBasisVector u = tensor_from_json(json::parse(to_json(t).dump()));
  CHECK(u.space == TensorSpace::Hminus);
  CHECK((t - u).max_abs() == 0.0);
}

TEST_CASE("diagram json round trip in both forms") {
  for (const auto &w : words_up_to(3)) {
    const BoxDiagram d = from_word(w);
    const BoxDiagram a = diagram_from_json(json::parse(diagram_word_json(d).dump()));
    const BoxDiagram b = diagram_from_json(json::parse(diagram_explicit_json(d).dump()));
    same_diagram(d, a);
    same_diagram(d, b);
    CHECK(a.history == d.history);
    CHECK(canonical_form(b) == canonical_form(d));
  }
}

TEST_CASE("explicit diagram form for the Z2 attachment") {
  const json j = diagram_explicit_json(from_word({Z2}));
  CHECK(j["solid"].size() == 7);
  CHECK(j["dashed"].size() == 1);
  CHECK(j["dashed"][0] == json::array({"Z1", "W1"}));
}

TEST_CASE("diagram json rejects bad input") {
  CHECK_THROWS_AS(diagram_from_json(json::parse(R"({"word":["T1"]})")), Error);
  CHECK_THROWS_AS(diagram_from_json(json::parse(R"({"loops":3,"word":["Z1"]})")), Error);
  CHECK_THROWS_AS(diagram_from_json(json::parse(
                      R"({"loops":1,"solid":[["Z1","T1"]],"dashed":[],"order":[["Z1","T1"],["T1","Z1"]]})")),
                  Error);
  CHECK_THROWS_AS(diagram_from_json(json::parse(
                      R"({"loops":1,"solid":[["Z1","T2"]],"dashed":[],"order":[]})")),
                  Error);
  CHECK(parse_word("Z2,W1") == std::vector<int>{Z2, W1});
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("Z3"), Error);
}

TEST_CASE("point and eval record json") {
  const auto d = one_loop();
  const auto a = assign_radii(d);
  const EvalPoint p = sample_point(a, 17);
  const EvalPoint q = point_from_json(json::parse(to_json(p).dump()));
  for (int v = 0; v < kExternals; ++v) {
    const auto &x = p.external(v), &y = q.external(v);
    CHECK(x.z11 == y.z11);
    CHECK(x.z12 == y.z12);
    CHECK(x.z21 == y.z21);
    CHECK(x.z22 == y.z22);
  }
  const EvalResult r = eval_quadrature(d, a, p, {16, 8});
  const json rec = eval_record(d, p, r, 17);
  for (const char *k : {"diagram", "point", "method", "value_re", "value_im", "error", "cost", "seed"})
    CHECK(rec.contains(k));
  CHECK(rec["method"] == "quad");
  CHECK(rec["value_re"].get<double>() == r.value.real());
}

TEST_CASE("config loading and overrides") {
  VerifyConfig base;
  base.seed = 9;
  const VerifyConfig c = config_from_json(json::parse(R"({"lmax": 5, "grid2": [10, 6]})"), base);
  CHECK(c.seed == 9);
  CHECK(c.lmax == 5);
  CHECK(c.grid2.periodic == 10);
  CHECK(c.grid2.gauss == 6);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"lmaxx": 5})")), Error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"ratio": 0.5})")), Error);

  const std::string path = "test_io_config.json";
  {
    std::ofstream out(path);
    out << to_json(c).dump();
  }
  const VerifyConfig d = load_config(path);
  CHECK(to_json(d) == to_json(c));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("does/not/exist.json"), Error);
}

TEST_CASE("suite names map to criteria") {
  CHECK(suite_criteria("operators") == std::vector<int>{8, 9});
  CHECK(suite_criteria("all").size() == 10);
  for (const auto &s : suite_names()) CHECK_FALSE(suite_criteria(s).empty());
  CHECK_THROWS_AS(suite_criteria("nope"), Error);
}

TEST_CASE("verify report is reproducible and serializes") {
  VerifyConfig cfg;
  cfg.loops = 3;
  cfg.samples = 20000;
  cfg.seed = 5;
  const VerifyReport a = run_suite("magic", cfg);
  const VerifyReport b = run_suite("magic", cfg);
  REQUIRE(a.checks.size() == 45);
  for (size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].id == b.checks[i].id);
    CHECK(a.checks[i].values == b.checks[i].values);
    CHECK(a.checks[i].pass == b.checks[i].pass);
  }
  CHECK(std::is_sorted(a.checks.begin(), a.checks.end(),
                       [](const CheckRecord &x, const CheckRecord &y) { return x.id < y.id; }));
  cfg.seed = 6;
  const VerifyReport c = run_suite("magic", cfg);
  CHECK(c.checks[0].values != a.checks[0].values);

  const json j = to_json(a);
  CHECK(j["schema"] == VerifyReport::kSchema);
  CHECK(j["checks"].size() == 45);
  CHECK(j["config"]["samples"] == 20000);
  std::ostringstream csv;
  write_csv(csv, a);
  const std::string s = csv.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 46);
}
