// magic_cli: diagrams, evaluations and verification suites from the shell.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "magic/eval.hpp"
#include "magic/io.hpp"

using namespace magic;

namespace {

constexpr int kMaxLoops = 6;

struct Options {
  std::optional<int> loops;
  std::optional<std::string> word;
  std::vector<std::string> words;
  std::string method = "quad";
  std::optional<int> lmax;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  double tol = 0.0;
  std::string config;
  std::string point;
  std::string suite;
  bool json_out = false;
  bool csv_out = false;
  bool explicit_form = false;
};

VerifyConfig make_config(const Options &o) {
  VerifyConfig c;
  if (!o.config.empty()) c = load_config(o.config, c);
  if (o.seed) c.seed = *o.seed;
  if (o.loops) c.loops = *o.loops;
  if (o.lmax) c.lmax = *o.lmax;
  if (o.samples) c.samples = *o.samples;
  return c;
}

void check_loops(int n) {
  if (n < 1 || n > kMaxLoops)
    throw Error(ErrorKind::InvalidArgument, "loops must be in 1.." + std::to_string(kMaxLoops));
}

BoxDiagram diagram_for_word(const std::string &w) {
  const auto word = parse_word(w);
  check_loops(static_cast<int>(word.size()) + 1);
  return from_word(word);
}

json diagram_json(const BoxDiagram &d, bool explicit_form) {
  json j = explicit_form ? diagram_explicit_json(d) : diagram_word_json(d);
  j["key"] = canonical_form(d);
  return j;
}

int cmd_diagram(const std::string &sub, const Options &o) {
  if (sub == "build") {
    const BoxDiagram d = diagram_for_word(o.word.value_or(""));
    json j = diagram_word_json(d);
    j["explicit"] = diagram_explicit_json(d);
    j["key"] = canonical_form(d);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (sub == "list") {
    const int n = o.loops.value_or(1);
    check_loops(n);
    json a = json::array();
    for (const auto &d : enumerate_diagrams(n)) a.push_back(diagram_json(d, o.explicit_form));
    std::cout << a.dump(2) << "\n";
    return 0;
  }
  // canon
  std::vector<std::string> ws = o.words;
  if (o.word) ws.push_back(*o.word);
  if (ws.empty()) throw Error(ErrorKind::InvalidArgument, "canon needs at least one --word");
  json a = json::array();
  for (const auto &w : ws) a.push_back({{"word", w}, {"key", canonical_form(diagram_for_word(w))}});
  std::cout << a.dump(2) << "\n";
  return 0;
}

std::string csv_quote(const std::string &s) {
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

int cmd_eval(const Options &o) {
  const VerifyConfig cfg = make_config(o);
  std::vector<BoxDiagram> ds;
  if (o.word) {
    ds.push_back(diagram_for_word(*o.word));
    if (o.loops && *o.loops != ds[0].loops)
      throw Error(ErrorKind::InvalidArgument, "--loops does not match --word");
  } else {
    const int n = o.loops.value_or(1);
    check_loops(n);
    ds = enumerate_diagrams(n);
  }
  std::vector<CycleAssignment> as;
  for (const auto &d : ds) as.push_back(assign_radii(d, cfg.base, cfg.ratio));

  EvalPoint p;
  if (!o.point.empty()) {
    std::ifstream in(o.point);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open point file " + o.point);
    p = point_from_json(json::parse(in));
  } else {
    p = sample_shared_point(as, cfg.seed);
  }

  json out = json::array();
  for (size_t i = 0; i < ds.size(); ++i) {
    const auto &d = ds[i];
    EvalResult r;
    if (o.method == "quad") {
      const GridSpec g = d.loops == 1 ? cfg.grid1 : cfg.grid2;
      r = eval_quadrature(d, as[i], p, g, o.tol);
    } else if (o.method == "spectral") {
      r = eval_spectral(d, as[i], p, cfg.lmax > 0 ? cfg.lmax : (d.loops == 1 ? 6 : 8), o.tol);
    } else {
      r = eval_montecarlo(d, as[i], p, cfg.samples, cfg.seed + 101 * i);
    }
    out.push_back(eval_record(d, p, r, o.method == "mc" ? cfg.seed + 101 * i : cfg.seed));
  }
  if (o.csv_out) {
    std::cout << "diagram,method,value_re,value_im,error,cost,seed\n";
    std::cout.precision(17);
    for (const auto &r : out)
      std::cout << csv_quote(r["diagram"].dump()) << "," << r["method"].get<std::string>() << ','
                << r["value_re"].get<double>() << ',' << r["value_im"].get<double>() << ','
                << r["error"].get<double>() << ',' << r["cost"].get<std::int64_t>() << ','
                << r["seed"].get<std::uint64_t>() << '\n';
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const Options &o) {
  const VerifyConfig cfg = make_config(o);
  const VerifyReport rep = run_suite(o.suite, cfg);
  if (o.csv_out)
    write_csv(std::cout, rep);
  else
    std::cout << to_json(rep).dump(2) << "\n";
  for (const auto &c : rep.checks)
    if (!c.pass) std::cerr << "FAIL " << c.id << " [" << c.inputs << "]\n";
  return rep.all_pass() ? 0 : 1;
}

void add_common(CLI::App *app, Options &o) {
  app->add_option("--seed", o.seed, "seed for sampled points and Monte Carlo");
  app->add_option("--config", o.config, "JSON config file (flags override)");
  auto *j = app->add_flag("--json", o.json_out, "JSON output (default)");
  auto *c = app->add_flag("--csv", o.csv_out, "CSV output");
  j->excludes(c);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"box diagram integrals: build, evaluate, verify"};
  app.require_subcommand(1);
  Options o;

  auto *diagram = app.add_subcommand("diagram", "build, list or canonicalize diagrams");
  diagram->require_subcommand(1);
  std::string dsub;
  for (const char *name : {"build", "list", "canon"}) {
    auto *s = diagram->add_subcommand(name);
    s->callback([&dsub, name] { dsub = name; });
  }
  diagram->get_subcommand("build")->add_option("--word", o.word, "attachment word, e.g. Z2,W1");
  diagram->get_subcommand("list")->add_option("--loops", o.loops)->check(CLI::PositiveNumber);
  diagram->get_subcommand("list")->add_flag("--explicit", o.explicit_form, "explicit edge form");
  diagram->get_subcommand("canon")->add_option("--word", o.words, "words to canonicalize");

  auto *eval = app.add_subcommand("eval", "evaluate l^(n) at a point");
  eval->add_option("--loops", o.loops, "all diagrams with this many loops");
  eval->add_option("--word", o.word, "attachment word (empty for one loop)");
  eval->add_option("--method", o.method)->check(CLI::IsMember({"quad", "mc", "spectral"}));
  eval->add_option("--lmax", o.lmax, "spectral truncation");
  eval->add_option("--samples", o.samples, "Monte Carlo samples");
  eval->add_option("--tol", o.tol, "relative error target; exceeding it is an error");
  eval->add_option("--point", o.point, "JSON point file; default is a seeded sample");
  add_common(eval, o);

  auto *verify = app.add_subcommand("verify", "run a verification suite");
  std::string suites;
  for (const auto &s : suite_names()) suites += (suites.empty() ? "" : "|") + s;
  verify->add_option("suite", o.suite, suites)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--loops", o.loops, "restrict to this loop count");
  verify->add_option("--lmax", o.lmax, "spectral truncation override");
  verify->add_option("--samples", o.samples, "Monte Carlo samples");
  add_common(verify, o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (diagram->parsed()) return cmd_diagram(dsub, o);
    if (eval->parsed()) return cmd_eval(o);
    return cmd_verify(o);
  } catch (const Error &e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
