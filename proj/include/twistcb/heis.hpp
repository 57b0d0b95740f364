#ifndef TWISTCB_HEIS_HPP
#define TWISTCB_HEIS_HPP

#include <map>
#include <vector>

#include "twistcb/linalg.hpp"
#include "twistcb/cyclo.hpp"

namespace twistcb {

/* Rank-one Heisenberg Fock space: modes a_n with [a_m, a_n] = hbar m
 * delta_{m+n,0}, a_0 = mu on the vacuum.  The abelian scaffolding for the
 * Virasoro layer and a cheap independent oracle for it. */
struct HeisModule {
  Rat hbar = 1, mu = 0;
  int depth = 0;
  std::vector<std::vector<std::vector<int>>> words; // partitions per degree
  std::vector<std::map<std::vector<int>, int>> index;
};

HeisModule heis_module(const Rat& hbar, const Rat& mu, int depth);

using HVec = std::map<std::vector<int>, Rat>;

HVec heis_apply(const HeisModule& m, int n, const HVec& v); // a_n

// matrix of C(D_k) = 1/2 sum_m : a_{k-m} a_m : from degree d to d-k
Mat<Rat> heis_casimir(const HeisModule& m, int k, int d);

/* exact check of
 *   [C(D_k), C(D_l)] = -hbar (l-k) C(D_{k+l}) + (k^3-k)/12 hbar^2 delta_{k,-l}
 * on every degree of the window */
bool heis_virasoro_check(const HeisModule& m, int k, int l);

} // namespace twistcb

#endif
