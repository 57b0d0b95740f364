#ifndef TWISTCB_LOOPREP_HPP
#define TWISTCB_LOOPREP_HPP

#include <map>
#include <utility>
#include <vector>

#include "twistcb/gamma.hpp"
#include "twistcb/irrep.hpp"
#include "twistcb/liealg.hpp"

namespace twistcb {

// depth cap for module builds; overridable via TWISTCB_MAX_DEPTH
int max_depth();

/* Laurent polynomial in t within an explicit window [lo, hi].  Assigning
 * outside the window throws; we never truncate silently. */
struct Laur {
  int lo = 0, hi = -1;
  std::map<int, Cyc> c;

  Laur(int lo_, int hi_) : lo(lo_), hi(hi_) {}
  void set(int n, const Cyc& v);
  Cyc get(int n) const;
};

// residue of (sum a_i t^i) dt; the window must contain -1
Cyc residue(const Laur& omega);

/* Element of g((t)) + k*c inside a window: terms keyed by (exponent, basis
 * index of g). */
struct LoopElt {
  const LieAlgebra* alg = nullptr;
  int lo = 0, hi = -1;
  std::map<std::pair<int, int>, Cyc> terms;
  Cyc central;

  LoopElt(const LieAlgebra& g, int lo_, int hi_) : alg(&g), lo(lo_), hi(hi_) {}
  void add(int n, int b, const Cyc& v);
};

// [X, Y] + c Res((dX|Y)), with the normalized form
LoopElt central_bracket(const LoopElt& x, const LoopElt& y);

/* Untwisting at an unbranched point: a Gamma-invariant element of
 * (g (x) sum_Gamma L)^Gamma is a tuple whose j-th slot is gamma^j applied
 * to slot 0.  pr_i projects; untwist_inv rebuilds the tuple. */
LoopElt untwist(const GammaAction& rho, int i, const std::vector<LoopElt>& tuple);
std::vector<LoopElt> untwist_inv(const GammaAction& rho, int i, const LoopElt& x);

/* Graded smooth modules.  A monomial is a sorted product of creation
 * operators X_b t^{-k} (k >= 1) applied to a vector of V_lambda; module
 * vectors are exact sparse combinations. */
using LoopMono = std::vector<std::pair<int, int>>; // (k, basis idx), ascending
using MWord = std::pair<LoopMono, int>;            // monomial (x) base index
using MVec = std::map<MWord, Rat>;

struct GradedModule {
  const LieAlgebra* alg = nullptr;
  Irrep rep;
  long level = 0;
  int depth = 0;
  bool quot = false;

  std::vector<std::vector<MWord>> words;      // Verma basis per degree 0..depth
  std::vector<std::map<MWord, int>> index;    // word -> position
  // quotient data: per degree, chosen Verma words spanning the quotient and
  // the contravariant pairings needed to project onto them
  std::vector<std::vector<int>> sel;
  std::vector<Mat<Rat>> gram_sel; // sel x all-words pairings
  std::vector<Mat<Rat>> gram_inv; // inverse of the sel x sel block

  int dim(int d) const { return quot ? (int)sel[d].size() : (int)words[d].size(); }
  const MWord& word_at(int d, int i) const {
    return quot ? words[d][sel[d][i]] : words[d][i];
  }
  // coordinates of a degree-d module vector (projection, for quotients)
  std::vector<Rat> coords(int d, const MVec& v) const;
};

GradedModule verma(const LieAlgebra& g, const Weight& lambda, long level, int depth);
GradedModule integrable_quotient(const GradedModule& vm);

// action of X_b t^n; degree-d input maps to degree d - n
MVec loop_apply(const GradedModule& m, int n, int b, const MVec& v);
MVec mvec_axpy(MVec v, const Rat& a, const MVec& w);

// contravariant pairing <word u, v> with omega(X t^{-k}) = X-dagger t^k
Rat shap_pair(const GradedModule& m, const MWord& u, const MVec& v);

// matrix of X_b t^n from degree d to degree d - n in module coordinates;
// empty when the target degree falls outside [0, depth]
Mat<Rat> mode_matrix(const GradedModule& m, int n, int b, int d);

} // namespace twistcb

#endif
