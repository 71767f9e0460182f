#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "magic/basis.hpp"
#include "magic/diagrams.hpp"
#include "magic/operators.hpp"
#include "magic/verify.hpp"

namespace magic {

using json = nlohmann::json;

// [{k, twoL, twoN, twoM, re, im}, ...]
json to_json(const BasisVector &v);
BasisVector basis_from_json(const json &j);

// {"space": "Zh"|"H+"|"H-", "terms": [{"a": {...}, "b": {...}, "re", "im"}, ...]}
json to_json(const TensorBasisVector &v);
TensorBasisVector tensor_from_json(const json &j);

// {"loops": n, "word": ["Z2", ...]}
json diagram_word_json(const BoxDiagram &d);
// {"loops": n, "solid": [[u, v], ...], "dashed": [...], "order": [[a, b], ...]}
// with vertex names; "order" lists every pair a < b of the partial order
json diagram_explicit_json(const BoxDiagram &d);
// accepts either form
BoxDiagram diagram_from_json(const json &j);
std::vector<int> parse_word(const std::string &csv);

// {"Z1": [re11, im11, re12, im12, re21, im21, re22, im22], "Z2": ..., "W1": ..., "W2": ...}
json to_json(const EvalPoint &p);
EvalPoint point_from_json(const json &j);

// {diagram, point, method, value_re, value_im, error, cost, seed, meta}
json eval_record(const BoxDiagram &d, const EvalPoint &p, const EvalResult &r,
                 std::uint64_t seed);

json to_json(const VerifyConfig &c);
// keys missing from j keep the values already in base
VerifyConfig config_from_json(const json &j, VerifyConfig base = {});
VerifyConfig load_config(const std::string &path, VerifyConfig base = {});

json to_json(const VerifyReport &r);
// one row per check: id,pass,tolerance,values,inputs,claim
void write_csv(std::ostream &os, const VerifyReport &r);

} // namespace magic
