#ifndef TWISTCB_COVER_HPP
#define TWISTCB_COVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistcb/gamma.hpp"

namespace twistcb {

/* Combinatorial dual graph of a Gamma-covering.  Vertices are base
 * components; edges are nodes; legs are marked points; branch entries carry
 * the character exponent 1..p-1 of the local Gamma-action. */
struct CoveringGraph {
  int p = 2;
  struct Vertex {
    int genus = 0;
  };
  struct Leg {
    int vertex = 0;
    std::string label;
  };
  struct Branch {
    int vertex = 0; // -1 encodes the malformed "on an edge" case
    int chr = 1;
    bool operator==(const Branch&) const = default;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<Leg> legs;
  std::vector<Branch> branch;
  std::vector<int> xi; // optional redundant Hurwitz data, must match branch
  bool has_xi = false;
};

CoveringGraph parse_graph(const std::string& json_text); // throws on schema errors
std::vector<std::string> validate(const CoveringGraph& g); // empty = ok

// arithmetic genus of the base and, by Riemann-Hurwitz, of the cover
int base_genus(const CoveringGraph& g);
int cover_genus(const CoveringGraph& g);

// split the node at edge index: remove edge, attach legs p+ / p-
CoveringGraph normalize(const CoveringGraph& g, int edge);

/* Kummer model y^p = f(x) = prod (x - b_r)^{m_r} of a Gamma-cover of P^1.
 * The character exponent at b_r is inv(m_r) mod p; infinity is unbranched
 * (p divides deg f) and carries no marked point. */
struct KummerModel {
  int p = 2;
  std::vector<std::pair<Rat, int>> branch; // (b_r, m_r), 1 <= m_r <= p-1
};

void validate_model(const KummerModel& m); // throws on violations

int inv_mod(int a, int p);

/* fractional shifts t^{shift(i)} of the eigensheaf stalks at a branch
 * point: shift(i) = i / n mod p for character exponent n */
std::vector<int> eigensheaf_stalks(const KummerModel& m, int branch_index);

/* order-1 vanishing of invariant derivations along the branch locus,
 * verified inside k[x,y]/(y^p - f) up to the given x-degree */
bool tangent_twist_check(const KummerModel& m, int deg_bound = 8);

/* The global twisted algebra h_A: Gamma-invariants of g (x) O regular away
 * from the puncture fibers.  Sections of g^{zeta^-i} (x) E_i with pole order
 * <= bound at the punctures have the explicit basis
 *   y^i x^t / (prod_r (x-b_r)^{floor(i m_r/p)} prod_j (x-a_j)^bound),
 * t = 0..B where B is cut by regularity at infinity. */
struct GlobalAlgebra {
  const KummerModel* model = nullptr;
  const GammaAction* rho = nullptr;
  std::vector<Rat> punctures;
  int bound = 0;
  struct Gen {
    int i = 0;                // eigenindex: X in g^{zeta^-i}
    std::vector<Cyc> eigvec;  // coordinates of X in the Chevalley basis
    std::vector<Rat> num;     // numerator coefficients, low degree first
  };
  std::vector<Gen> gens;
};

GlobalAlgebra global_algebra(const KummerModel& m, const std::vector<Rat>& punctures,
                             const GammaAction& rho, int bound);

// exhaustive bracket-closure check of the spanning set within pole bound 2*bound
bool algebra_closed(const GlobalAlgebra& a);

// rational p-th root, when one exists
std::optional<Rat> rat_root(const Rat& v, int p);

/* Laurent coefficients (exponents -bound..hi) of the generator's function at
 * x = a_j + t on the sheet where y(a_j) = zeta^e f(a_j)^{1/p}; requires
 * f(a_j) to have a rational p-th root. */
std::vector<Cyc> expand_gen(const GlobalAlgebra& a, const GlobalAlgebra::Gen& g,
                            int puncture, int sheet_e, int hi);

/* canonical smoothing neighborhood k[t+,t-,tau]/(t+t- = tau, tau^{n+1}) and
 * its embedding alpha into L_N[tau]/tau^{n+1} */
struct TauPair {
  // (exponent of t+-, power of tau) -> coefficient, per component
  std::map<std::pair<int, int>, Rat> plus, minus;
};

TauPair alpha_image(int n, int i, int j); // alpha(t+^i t-^j), reduced mod tau^{n+1}
TauPair tau_mul(int n, const TauPair& a, const TauPair& b);
// of the form sum a_ij (t+^{i-j} tau^j, t-^{j-i} tau^i) modulo tau^{n+1}
bool in_node_subalgebra(const TauPair& x, int n);

} // namespace twistcb

#endif
