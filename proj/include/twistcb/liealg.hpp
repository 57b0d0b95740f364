#ifndef TWISTCB_LIEALG_HPP
#define TWISTCB_LIEALG_HPP

#include "twistcb/cyclo.hpp"
#include "twistcb/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace twistcb {

/* Weight in fundamental-weight coordinates. */
using Weight = std::vector<long>;

/* Simple Lie algebra in a Chevalley basis.
 *
 * Basis indexing: 0..rank-1 the simple coroots h_i, then rank + r the root
 * vectors e_r where r runs over all roots; roots are numbered 0..npos-1
 * (positive, by height then lex) and npos..2npos-1 (the negatives, r+npos
 * being -alpha_r).  Structure constants follow the extraspecial-pair sign
 * convention; Jacobi and form invariance are verified exhaustively at build
 * time. */
class LieAlgebra {
public:
  static LieAlgebra build(const std::string& type); // "A1".."G2"

  std::string type;
  int rank = 0;
  std::vector<std::vector<int>> cartan;      // A[i][j] = <alpha_j, alpha_i^vee>
  std::vector<std::vector<int>> pos_roots;   // simple-root coordinates
  std::vector<Rat> d;                        // (alpha_i,alpha_i)/2, min 1
  int theta = 0;                             // index of the highest root

  int npos() const { return (int)pos_roots.size(); }
  int dim() const { return rank + 2 * npos(); }
  int h_index(int i) const { return i; }
  int e_index(int r) const { return rank + r; }          // r in 0..2npos-1
  int f_index(int r) const { return rank + npos() + r; } // e_{-alpha_r}

  // roots as signed indices: +(r+1) positive, -(r+1) negative
  std::vector<int> root_coords(int sr) const;
  int root_lookup(const std::vector<int>& coords) const; // signed index or 0
  Rat root_norm2(int sr) const;                          // (alpha, alpha)
  int root_height(int sr) const;
  std::vector<long> coroot(int sr) const; // alpha^vee in simple-coroot coords

  // structure constant N(a,b) for signed roots with a+b a root
  Rat N(int sa, int sb) const;
  int root_lookup_sum(int sa, int sb) const; // signed index of a+b, 0 if not a root

  // bracket of basis elements / sparse vectors
  SparseVec<Rat> bracket(int a, int b) const;
  SparseVec<Rat> bracket_vec(const SparseVec<Rat>& x, const SparseVec<Rat>& y) const;
  SparseVec<Cyc> bracket_vec(const SparseVec<Cyc>& x, const SparseVec<Cyc>& y) const;

  Mat<Rat> killing; // raw Killing form on the basis
  Mat<Rat> form;    // normalized: (H_theta|H_theta) = 2
  Rat form_pair(const SparseVec<Rat>& x, const SparseVec<Rat>& y) const;
  Cyc form_pair(const SparseVec<Cyc>& x, const SparseVec<Cyc>& y) const;

  // weight utilities
  Weight weight_of_root(int sr) const;              // fundamental coords
  long pair_coroot(const Weight& w, int sr) const;  // w(H_alpha)
  long level_of(const Weight& w) const { return pair_coroot(w, theta + 1); }
  bool dominant(const Weight& w) const;
  std::vector<Weight> enumerate_levels(long ell) const; // P_ell, sorted
  Rat weyl_dim(const Weight& w) const;                  // dimension oracle

  // build-time verification (also callable from tests)
  void verify_structure() const;

private:
  std::map<std::vector<int>, int> root_map_; // coords -> positive index
  std::map<std::pair<int, int>, Rat> ntab_;  // positive-pair table
  std::vector<std::vector<SparseVec<Rat>>> btab_; // full bracket table
  void generate_roots();
  void compute_constants();
  void compute_brackets();
  void compute_forms();
  Rat n_general(int sa, int sb) const;
};

} // namespace twistcb

#endif
