#ifndef TWISTCB_SUGAWARA_HPP
#define TWISTCB_SUGAWARA_HPP

#include <string>

#include "twistcb/looprep.hpp"

namespace twistcb {

/* Casimir dual pairs (X_i, Y_i), (X_i|Y_j) = delta_ij for the normalized
 * form, together with the dual Coxeter number read off from
 * sum [X_i,[Y_i,-]] = 2 hcheck id. */
struct CasimirTensor {
  std::vector<std::pair<SparseVec<Rat>, SparseVec<Rat>>> pairs;
  Rat hcheck;
};

CasimirTensor casimir(const LieAlgebra& g);

// sum X_i Y_i on V (scalar matrix for irreducible V)
Mat<Rat> casimir_matrix(const CasimirTensor& cas, const Irrep& v);

/* Sugawara operator T(D_k), D_k = t^{k+1} d/dt, as per-degree matrices.
 * op[d] maps degree d to degree d-k; empty when out of the window.  Only
 * finitely many normal-ordered terms survive on a fixed degree: the factor
 * with the larger exponent acts first and kills everything beyond the
 * computed mode cutoff. */
struct Virasoro {
  int k = 0;
  std::vector<Mat<Rat>> op;
};

Virasoro sugawara_operator(const GradedModule& m, const CasimirTensor& cas, int k);

/* Exact checks of the Virasoro structure on every degree the window
 * accommodates:
 *   (i)  [T(D_k), X t^n] = n X t^{n+k}
 *   (ii) [T(D_k), T(D_l)] = (l-k) T(D_{k+l})
 *                           + c0 (k^3-k)/12 delta_{k,-l},
 * with central charge c0 = level dim(g) / (level + hcheck). */
struct VirReport {
  bool ok = true;
  std::string detail;
};

VirReport virasoro_check(const GradedModule& m, const CasimirTensor& cas, int k, int l);

} // namespace twistcb

#endif
