#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magic/hc_core.hpp"

namespace magic {

// Vertex ids: 0 Z1, 1 Z2, 2 W1, 3 W2, 4.. T1..Tn.
enum Vertex : int { Z1 = 0, Z2 = 1, W1 = 2, W2 = 3 };
constexpr int kExternals = 4;

std::string vertex_name(int v);
int vertex_from_name(const std::string &s);
inline bool is_internal(int v) { return v >= kExternals; }

using Edge = std::pair<int, int>;  // stored with first < second

struct BoxDiagram {
  int loops = 0;
  std::vector<Edge> solid;   // sorted multiset
  std::vector<Edge> dashed;  // sorted multiset
  std::vector<std::vector<char>> less;  // less[a][b]: a precedes b
  std::vector<int> history;             // attachment targets

  int vertex_count() const { return kExternals + loops; }
  bool precedes(int a, int b) const { return less[a][b] != 0; }
  int solid_degree(int v) const;
  int dashed_degree(int v) const;
};

BoxDiagram one_loop();
BoxDiagram attach_slingshot(const BoxDiagram &d, int target);
BoxDiagram from_word(const std::vector<int> &word);
bool degree_identities_hold(const BoxDiagram &d);

// Z <-> W relabelling with the order reversed (the image under Z -> Z^{-1}).
BoxDiagram reverse_order(const BoxDiagram &d);

std::string canonical_form(const BoxDiagram &d);
bool is_isomorphic(const BoxDiagram &a, const BoxDiagram &b);
std::vector<BoxDiagram> enumerate_diagrams(int n);

struct CycleAssignment {
  std::vector<double> r;  // radius per internal, index k-1 for T_k
  double rMax[2]{};       // per Z_i
  double rMin[2]{};       // per W_i
  double R[2]{};          // outer Z cycles for the operators
  double Rin[2]{};        // inner W cycles for the mirrored operators
};
CycleAssignment assign_radii(const BoxDiagram &d, double base = 1.0, double ratio = 4.0);

struct EvalPoint {
  HMatrix Z1, Z2, W1, W2;
  const HMatrix &external(int v) const;
};

// Z_i = zf rMax_i U_i, W_i = wf rMin_i V_i with Haar-random unitaries.
EvalPoint sample_point(const CycleAssignment &a, std::uint64_t seed, double zf = 4.0,
                       double wf = 0.25);
// Throws DomainViolation when a point misses its domain or sits within
// margin * radius of a cycle (in singular values).
void validate_point(const CycleAssignment &a, const EvalPoint &p, double margin = 0.05);

cplx integrand(const BoxDiagram &d, const EvalPoint &p, const std::vector<HMatrix> &t);
cplx normalization(const BoxDiagram &d);

} // namespace magic
