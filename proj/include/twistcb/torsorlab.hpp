#ifndef TWISTCB_TORSORLAB_HPP
#define TWISTCB_TORSORLAB_HPP

#include <string>
#include <vector>

namespace twistcb {

// finite group as a multiplication table; element 0 is the identity
struct FiniteGroup {
  int n = 0;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;
  int op(int a, int b) const { return mul[a][b]; }
  static FiniteGroup cyclic(int n);
  static FiniteGroup sym(int n); // n <= 4
  // index of a permutation in sym(n)'s element order
  static int perm_index(const FiniteGroup& S, const std::vector<int>& perm);
};

using GroupAuto = std::vector<int>; // value table g -> f(g)

bool is_automorphism(const FiniteGroup& G, const GroupAuto& f);
GroupAuto conj_by(const FiniteGroup& G, int s);
GroupAuto inversion(const FiniteGroup& G); // automorphism iff G abelian

/* Finite model of a cyclic branched cover: Gamma = <gam> acts on the total
 * set, the projection to the base is Gamma-invariant, and off the branch
 * subset every fiber is a single free Gamma-orbit. */
struct FiniteCover {
  int nbase = 0;
  std::vector<int> pi;  // total point -> base point
  std::vector<int> gam; // generator of Gamma
  int order() const;
  std::vector<int> fiber(int y) const;
  bool is_branch(int y) const;
  void validate() const;
};

/* (Gamma,G)-bundle trivialized fiberwise: the fiber over a total point is G
 * with right translation, and the Gamma-lift is
 * gamma(yt, g) = (gam(yt), twist[yt] * rho(g)).
 * validate() checks gamma(p g) = gamma(p) rho(g) and gamma^{|Gamma|} = id
 * exhaustively. */
struct GammaGBundle {
  const FiniteCover* cov = nullptr;
  const FiniteGroup* G = nullptr;
  GroupAuto rho;
  std::vector<int> twist;
  bool valid(std::string* why = nullptr) const;
  void validate() const;
};

/* true iff some Gamma-equivariant G-equivariant bijection exists over
 * pi^{-1}{y}; brute-force over left-translation coefficients */
bool local_type_equal(const GammaGBundle& P1, const GammaGBundle& P2, int y);

/* (pi_* Iso(P_ref, P'))^Gamma with H = (pi_* Aut(P_ref))^Gamma, fiber by
 * fiber over the base.  An isomorphism over a fiber is stored as its
 * left-translation coefficient at each point of the fiber, in fiber(y)
 * order. */
struct Pushforward {
  std::vector<std::vector<std::vector<int>>> iso;
  std::vector<std::vector<std::vector<int>>> H;
  bool torsor = false; // every fiber nonempty and H simply transitive
};

Pushforward invariant_pushforward(const GammaGBundle& P_ref, const GammaGBundle& Pp);

/* Rebuilds P' from its pushforward via the contracted product
 * pi^*(Q) x^{pi^* H} P_ref, checks the evaluation map is a (Gamma,G)-
 * isomorphism onto P', and matches the pushforward of the rebuilt bundle
 * with Q as an H-set.  Throws std::invalid_argument when the local types
 * differ at some base point. */
bool equivalence_roundtrip(const GammaGBundle& P_ref, const GammaGBundle& Pp);

// every valid twist vector for the given action data
std::vector<GammaGBundle> enumerate_bundles(const FiniteCover& cov, const FiniteGroup& G,
                                            const GroupAuto& rho);

} // namespace twistcb

#endif
