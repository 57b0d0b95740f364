#ifndef TWISTCB_IRREP_HPP
#define TWISTCB_IRREP_HPP

#include "twistcb/liealg.hpp"

#include <map>

namespace twistcb {

/* Finite-dimensional irreducible V_lambda with explicit rational matrices.
 * Basis vectors are cosets of PBW monomials in the negative root vectors
 * selected so that the contravariant (Shapovalov) Gram rows are independent;
 * the form is nondegenerate on the chosen basis. */
struct Irrep {
  const LieAlgebra* alg = nullptr;
  Weight label;
  int dim = 0;
  std::vector<Weight> wt;       // weight of each basis vector
  std::vector<Mat<Rat>> action; // indexed by Chevalley basis element
  Mat<Rat> cform;               // contravariant form, block diagonal by weight
  int hw = 0;                   // highest-weight vector index

  Mat<Rat> act(const SparseVec<Rat>& x) const;
  Mat<Cyc> act_cyc(const SparseVec<Cyc>& x) const;
  // multiplicity of a weight
  int mult(const Weight& mu) const;
};

Irrep build_irrep(const LieAlgebra& g, const Weight& lambda, long dim_bound = 400);

/* Dominant label of the irrep presented by explicit basis-element matrices
 * (used for twisted actions and duals): common kernel of the positive-root
 * operators, then the Cartan eigenvalues on it. */
Weight highest_weight_label(const LieAlgebra& g, const std::vector<Mat<Cyc>>& action);

Weight dual_weight(const LieAlgebra& g, const Weight& w); // -w0 * w

} // namespace twistcb

#endif
