#include "magic/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace magic {

namespace {

json index_json(const CoeffIndex &c) {
  return {{"k", c.k}, {"twoL", c.twoL}, {"twoN", c.twoN}, {"twoM", c.twoM}};
}

CoeffIndex index_from(const json &j) {
  CoeffIndex c{j.at("k").get<int>(), j.at("twoL").get<int>(), j.at("twoN").get<int>(),
               j.at("twoM").get<int>()};
  if (!c.valid()) throw Error(ErrorKind::IndexOutOfRange, "bad basis label " + j.dump());
  return c;
}

json matrix_json(const HMatrix &m) {
  return json::array({m.z11.real(), m.z11.imag(), m.z12.real(), m.z12.imag(), m.z21.real(),
                      m.z21.imag(), m.z22.real(), m.z22.imag()});
}

HMatrix matrix_from(const json &j) {
  if (!j.is_array() || j.size() != 8)
    throw Error(ErrorKind::InvalidArgument, "matrix needs 8 numbers");
  auto c = [&](int i) { return cplx(j[2 * i].get<double>(), j[2 * i + 1].get<double>()); };
  return {c(0), c(1), c(2), c(3)};
}

json edges_json(const std::vector<Edge> &es) {
  json a = json::array();
  for (const auto &[u, v] : es) a.push_back({vertex_name(u), vertex_name(v)});
  return a;
}

TensorSpace space_from(const std::string &s) {
  for (auto t : {TensorSpace::Zh, TensorSpace::Hplus, TensorSpace::Hminus})
    if (s == space_name(t)) return t;
  throw Error(ErrorKind::InvalidArgument, "unknown tensor space '" + s + "'");
}

} // namespace

json to_json(const BasisVector &v) {
  json a = json::array();
  for (const auto &[idx, c] : v.entries()) {
    json e = index_json(idx);
    e["re"] = c.real();
    e["im"] = c.imag();
    a.push_back(e);
  }
  return a;
}

BasisVector basis_from_json(const json &j) {
  BasisVector v;
  for (const auto &e : j) v.add(index_from(e), cplx(e.at("re").get<double>(), e.at("im").get<double>()));
  return v;
}

json to_json(const TensorBasisVector &v) {
  json terms = json::array();
  for (const auto &[ab, c] : v.terms)
    terms.push_back({{"a", index_json(ab.first)}, {"b", index_json(ab.second)}, {"re", c.real()},
                     {"im", c.imag()}});
  return {{"space", space_name(v.space)}, {"terms", terms}};
}

TensorBasisVector tensor_from_json(const json &j) {
  TensorBasisVector v;
  v.space = space_from(j.at("space").get<std::string>());
  for (const auto &t : j.at("terms"))
    v.add(index_from(t.at("a")), index_from(t.at("b")),
          cplx(t.at("re").get<double>(), t.at("im").get<double>()));
  return v;
}

json diagram_word_json(const BoxDiagram &d) {
  if (static_cast<int>(d.history.size()) != d.loops - 1)
    throw Error(ErrorKind::InvalidArgument, "diagram has no attachment word");
  json w = json::array();
  for (int t : d.history) w.push_back(vertex_name(t));
  return {{"loops", d.loops}, {"word", w}};
}

json diagram_explicit_json(const BoxDiagram &d) {
  json order = json::array();
  for (int a = 0; a < d.vertex_count(); ++a)
    for (int b = 0; b < d.vertex_count(); ++b)
      if (d.precedes(a, b)) order.push_back({vertex_name(a), vertex_name(b)});
  return {{"loops", d.loops},
          {"solid", edges_json(d.solid)},
          {"dashed", edges_json(d.dashed)},
          {"order", order}};
}

std::vector<int> parse_word(const std::string &csv) {
  std::vector<int> w;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const int v = vertex_from_name(tok);
    if (is_internal(v)) throw Error(ErrorKind::InvalidArgument, "word letters must be external");
    w.push_back(v);
  }
  return w;
}

BoxDiagram diagram_from_json(const json &j) {
  if (j.contains("word")) {
    std::vector<int> w;
    for (const auto &t : j.at("word")) {
      const int v = vertex_from_name(t.get<std::string>());
      if (is_internal(v)) throw Error(ErrorKind::InvalidArgument, "word letters must be external");
      w.push_back(v);
    }
    BoxDiagram d = from_word(w);
    if (j.contains("loops") && j.at("loops").get<int>() != d.loops)
      throw Error(ErrorKind::InvalidArgument, "loops does not match the word length");
    return d;
  }
  BoxDiagram d;
  d.loops = j.at("loops").get<int>();
  if (d.loops < 1) throw Error(ErrorKind::InvalidArgument, "loops must be positive");
  const int nv = d.vertex_count();
  auto vertex = [&](const json &s) {
    const int v = vertex_from_name(s.get<std::string>());
    if (v >= nv) throw Error(ErrorKind::InvalidArgument, "vertex " + s.dump() + " out of range");
    return v;
  };
  auto edges = [&](const char *key) {
    std::vector<Edge> es;
    for (const auto &e : j.at(key)) {
      const int u = vertex(e.at(0)), v = vertex(e.at(1));
      if (u == v) throw Error(ErrorKind::InvalidArgument, "self loop");
      es.push_back(u < v ? Edge{u, v} : Edge{v, u});
    }
    std::sort(es.begin(), es.end());
    return es;
  };
  d.solid = edges("solid");
  d.dashed = edges("dashed");
  d.less.assign(nv, std::vector<char>(nv, 0));
  for (const auto &e : j.at("order")) d.less[vertex(e.at(0))][vertex(e.at(1))] = 1;
  for (int k = 0; k < nv; ++k)
    for (int a = 0; a < nv; ++a)
      if (d.less[a][k])
        for (int b = 0; b < nv; ++b)
          if (d.less[k][b]) d.less[a][b] = 1;
  for (int a = 0; a < nv; ++a)
    if (d.less[a][a]) throw Error(ErrorKind::InvalidArgument, "order has a cycle");
  return d;
}

json to_json(const EvalPoint &p) {
  return {{"Z1", matrix_json(p.Z1)}, {"Z2", matrix_json(p.Z2)}, {"W1", matrix_json(p.W1)},
          {"W2", matrix_json(p.W2)}};
}

EvalPoint point_from_json(const json &j) {
  return {matrix_from(j.at("Z1")), matrix_from(j.at("Z2")), matrix_from(j.at("W1")),
          matrix_from(j.at("W2"))};
}

json eval_record(const BoxDiagram &d, const EvalPoint &p, const EvalResult &r,
                 std::uint64_t seed) {
  json dj = d.history.size() + 1 == static_cast<size_t>(d.loops) ? diagram_word_json(d)
                                                                 : diagram_explicit_json(d);
  return {{"diagram", dj},         {"point", to_json(p)},       {"method", method_name(r.method)},
          {"value_re", r.value.real()}, {"value_im", r.value.imag()}, {"error", r.error},
          {"cost", r.cost},        {"seed", seed},              {"meta", r.meta}};
}

json to_json(const VerifyConfig &c) {
  return {{"seed", c.seed},
          {"loops", c.loops},
          {"lmax", c.lmax},
          {"samples", c.samples},
          {"base", c.base},
          {"ratio", c.ratio},
          {"grid1", {c.grid1.periodic, c.grid1.gauss}},
          {"grid2", {c.grid2.periodic, c.grid2.gauss}}};
}

VerifyConfig config_from_json(const json &j, VerifyConfig c) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
  for (const auto &[key, val] : j.items()) {
    if (key == "seed") c.seed = val.get<std::uint64_t>();
    else if (key == "loops") c.loops = val.get<int>();
    else if (key == "lmax") c.lmax = val.get<int>();
    else if (key == "samples") c.samples = val.get<std::int64_t>();
    else if (key == "base") c.base = val.get<double>();
    else if (key == "ratio") c.ratio = val.get<double>();
    else if (key == "grid1") c.grid1 = {val.at(0).get<int>(), val.at(1).get<int>()};
    else if (key == "grid2") c.grid2 = {val.at(0).get<int>(), val.at(1).get<int>()};
    else throw Error(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
  }
  if (c.ratio <= 1.0 || c.base <= 0.0)
    throw Error(ErrorKind::InvalidArgument, "need base > 0 and ratio > 1");
  return c;
}

VerifyConfig load_config(const std::string &path, VerifyConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config " + path);
  try {
    return config_from_json(json::parse(in), base);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::InvalidArgument, "config " + path + ": " + e.what());
  }
}

json to_json(const VerifyReport &r) {
  json checks = json::array();
  for (const auto &c : r.checks)
    checks.push_back({{"id", c.id},
                      {"claim", c.claim},
                      {"inputs", c.inputs},
                      {"values", c.values},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  return {{"schema", VerifyReport::kSchema},
          {"suite", r.suite},
          {"config", to_json(r.config)},
          {"seed", r.config.seed},
          {"all_pass", r.all_pass()},
          {"wall_seconds", r.wall_seconds},
          {"checks", checks}};
}

void write_csv(std::ostream &os, const VerifyReport &r) {
  auto quote = [](const std::string &s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  os << "id,pass,tolerance,values,inputs,claim\n";
  for (const auto &c : r.checks) {
    std::ostringstream v;
    v.precision(17);
    for (size_t i = 0; i < c.values.size(); ++i) v << (i ? ";" : "") << c.values[i];
    std::ostringstream tol;
    tol.precision(17);
    tol << c.tolerance;
    os << c.id << ',' << (c.pass ? 1 : 0) << ',' << tol.str() << ',' << v.str() << ','
       << quote(c.inputs) << ',' << quote(c.claim) << '\n';
  }
}

} // namespace magic
