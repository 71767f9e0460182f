#pragma once

#include <functional>

#include "magic/basis.hpp"
#include "magic/diagrams.hpp"

namespace magic {

// Merged domain constraints: Z outside every rMax, W inside every rMin.
CycleAssignment merge_assignments(const std::vector<CycleAssignment> &as);
// point admissible for every assignment in the list
EvalPoint sample_shared_point(const std::vector<CycleAssignment> &as, std::uint64_t seed);

// Tensor-product quadrature over the cycles of all internals (n <= 2).
EvalResult eval_quadrature(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                           const GridSpec &grid, double tol = 0.0);
// Same sum without OpenMP; reference for the parallel kernel.
cplx quadrature_sum_serial(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                           const GridSpec &grid);
cplx quadrature_sum(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                    const GridSpec &grid);

EvalResult eval_montecarlo(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                           std::int64_t samples, std::uint64_t seed);

// Elimination of internals in increasing-radius order using the matrix
// coefficient expansions and the orthogonality table.
EvalResult eval_spectral(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                         int Lmax, double tol = 0.0);
// twoLmax bounds 2l in every expansion; elimination order from the radii
cplx spectral_value(const BoxDiagram &d, const CycleAssignment &a, const EvalPoint &p,
                    int twoLmax);
cplx spectral_value(const BoxDiagram &d, const EvalPoint &p, int twoLmax);

using PointFunction = std::function<cplx(const EvalPoint &)>;

// |box l| s^2 / |l| by central differences along the four coordinates z^k of
// one external variable; s is the operator norm of that variable.
double laplacian_residual(const PointFunction &l, const EvalPoint &p, int var, double hrel);
double laplacian_residual(const std::function<cplx(const HMatrix &)> &f, const HMatrix &Z,
                          double hrel);

EvalPoint transform_point(const GroupElement &h, const EvalPoint &p);
cplx conformal_factor(const GroupElement &h, const EvalPoint &p);
// relative defect of l(hZ1, hZ2; hW1, hW2) = factor * l(Z1, Z2; W1, W2)
double conformal_check(const CycleAssignment &a, const EvalPoint &p, const GroupElement &h,
                       const PointFunction &l);

// assignment for the reversed diagram: r -> 1/r
CycleAssignment inverted_assignment(const CycleAssignment &a);
// relative defect of l(q) = N(W1)N(W2) l~(W1,W2;Z1,Z2) N(Z1)N(Z2) where
// Z_i = q.Z_i^{-1}, W_i = q.W_i^{-1} and l~ is the reversed diagram
double inversion_check(const BoxDiagram &d, const EvalPoint &q, int Lmax);

// Quadrature with the radii of two internals swapped against the order.
EvalResult wrong_cycle_experiment(const BoxDiagram &d, const CycleAssignment &a,
                                  const EvalPoint &p, const GridSpec &grid);

} // namespace magic
