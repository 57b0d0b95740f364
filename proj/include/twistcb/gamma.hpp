#ifndef TWISTCB_GAMMA_HPP
#define TWISTCB_GAMMA_HPP

#include "twistcb/irrep.hpp"
#include "twistcb/liealg.hpp"

namespace twistcb {

/* Order-p automorphism of g over Q(zeta_p), as a matrix on the Chevalley
 * basis.  Constructors validate order, bracket preservation and form
 * preservation by brute force. */
struct GammaAction {
  const LieAlgebra* alg = nullptr;
  int p = 1;
  Mat<Cyc> M;

  static GammaAction trivial(const LieAlgebra& g, int p);
  static GammaAction from_matrix(const LieAlgebra& g, int p, Mat<Cyc> m);
  // type A only: conjugation by an invertible (n+1)x(n+1) matrix in sl_{n+1}
  static GammaAction inner_typeA(const LieAlgebra& g, int p, const Mat<Cyc>& c);
  // type A only: X -> -X^t (diagram involution), p = 2
  static GammaAction outer_typeA(const LieAlgebra& g);

  void validate() const;
  SparseVec<Cyc> apply(const SparseVec<Cyc>& x) const;
  Mat<Cyc> power(int k) const;

  // bases of the eigenspaces g^{zeta^i}, i = 0..p-1; dims sum to dim g
  std::vector<std::vector<std::vector<Cyc>>> eigenspaces() const;
};

// dominant label of the twisted representation rho_lambda(gamma^{-1} - )
Weight gamma_on_weight(const GammaAction& rho, const Weight& lambda);

/* Chevalley-basis elements of sl_{n+1} as matrices (the defining model);
 * exposed for building inner actions and cover trivializations. */
std::vector<Mat<Rat>> typeA_matrix_model(const LieAlgebra& g);

} // namespace twistcb

#endif
