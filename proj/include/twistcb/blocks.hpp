#ifndef TWISTCB_BLOCKS_HPP
#define TWISTCB_BLOCKS_HPP

#include <map>
#include <string>
#include <vector>

#include "twistcb/cover.hpp"
#include "twistcb/looprep.hpp"

namespace twistcb {

/* Label of a marked point: a level-bounded dominant weight plus the choice of
 * sheet used to trivialize the cover there. */
struct Labeled {
  Weight wt;
  int triv = 0;
};

struct RankReport {
  long rank = 0;
  bool stabilized = false; // last two truncation depths agreed
  int depth = 0;
};

/* Truncated coinvariants of the tensor of integrable modules at the punctures
 * under the global twisted algebra.  Relations are exact: a generator with
 * pole bound k only acts on vectors of total degree <= d - k, so nothing is
 * projected away.  The result is a semi-decided rank with a stabilization
 * flag; it can move in either direction before settling. */
RankReport coinvariant_rank(const KummerModel& m, const std::vector<Rat>& punctures,
                            const GammaAction& rho, const std::vector<Labeled>& labels,
                            long level, int depth);

/* Three-point genus-0 ranks at a level, all indices lowered:
 * rank(a, b, c) is the block with labels a, b, c. */
struct FusionTable {
  const LieAlgebra* alg = nullptr;
  long level = 0;
  std::map<std::vector<Weight>, long> n; // key: sorted triple
  long rank(const Weight& a, const Weight& b, const Weight& c) const;
};

// Kac-Walton: classical tensor multiplicities folded into the level-(l+h)
// affine alcove with alternating signs
FusionTable fusion_table(const LieAlgebra& g, long level);

// n-point genus-0 rank by iterated contraction through the table
long genus0_rank(const FusionTable& t, std::vector<Weight> labels);

struct PropReport {
  bool ok = false;
  RankReport base, extended;
};

// rank is unchanged by extra trivially-labeled punctures
PropReport propagation_check(const KummerModel& m, const std::vector<Rat>& punctures,
                             const GammaAction& rho, const std::vector<Labeled>& labels,
                             const std::vector<Rat>& extra, long level, int depth);

/* Factorization recursion: split each node, sum over level-bounded labels
 * with the dual label on the opposite side, until only three-pointed genus-0
 * pieces remain.  Pieces the table cannot cover (positive genus left over,
 * branch points) raise an error. */
long degeneration_rank(const CoveringGraph& g, const std::map<std::string, Labeled>& labels,
                       const FusionTable& table);

/* The sewing element: per-degree duals of the pairing b between the modules
 * at the two sides of a node, built by the degree-lowering recursion
 * b(X t+^{-k} u, v) = -b(u, X t-^{k} v). */
struct SewingElement {
  Weight w, wdual;
  GradedModule mod, dual_mod;
  std::vector<Mat<Rat>> b;   // pairing matrices per degree
  std::vector<Mat<Rat>> eps; // eps_d = inverse transpose of b_d
};

SewingElement sewing_element(const LieAlgebra& g, const Weight& w, long level, int depth);

// every node-algebra generator (X t+^m, X t-^{-m} tau^m) kills eps, |m| <= mmax
bool sewing_annihilates(const SewingElement& s, int mmax);

// direct truncated coinvariants on the nodal cubic: P^1 with 0 ~ infinity
// glued and one puncture at 1
RankReport nodal_genus1_rank(const LieAlgebra& g, const Weight& lambda, long level, int depth);

struct SewReport {
  bool ok = false;
  long nodal_rank = 0, factor_rank = 0;
  std::string detail;
};

/* tau-order-0 consistency of the smoothing map u -> u (x) eps(W): the nodal
 * rank matches the factorization sum, and pairing eps back through b is
 * multiplication by dim W on each summand. */
SewReport sewing_map_check(const LieAlgebra& g, long level, int depth);

} // namespace twistcb

#endif
