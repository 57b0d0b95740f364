#include "twistcb/torsorlab.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace twistcb {

namespace {

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out; // lex order, identity first
}

// odometer over G^m; returns false when exhausted
bool next_tuple(std::vector<int>& t, int base) {
  for (size_t i = 0; i < t.size(); ++i) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

} // namespace

FiniteGroup FiniteGroup::cyclic(int n) {
  FiniteGroup G;
  G.n = n;
  G.mul.assign(n, std::vector<int>(n));
  G.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) G.mul[a][b] = (a + b) % n;
    G.inv[a] = (n - a) % n;
  }
  return G;
}

FiniteGroup FiniteGroup::sym(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("sym: n out of range");
  auto perms = all_perms(n);
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = (int)i;
  FiniteGroup G;
  G.n = (int)perms.size();
  G.mul.assign(G.n, std::vector<int>(G.n));
  G.inv.resize(G.n);
  for (int a = 0; a < G.n; ++a) {
    std::vector<int> ainv(n);
    for (int i = 0; i < n; ++i) ainv[perms[a][i]] = i;
    G.inv[a] = idx.at(ainv);
    for (int b = 0; b < G.n; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      G.mul[a][b] = idx.at(c);
    }
  }
  return G;
}

int FiniteGroup::perm_index(const FiniteGroup& S, const std::vector<int>& perm) {
  auto perms = all_perms((int)perm.size());
  if ((int)perms.size() != S.n) throw std::invalid_argument("perm_index: size mismatch");
  for (int i = 0; i < S.n; ++i)
    if (perms[i] == perm) return i;
  throw std::invalid_argument("perm_index: not a permutation");
}

bool is_automorphism(const FiniteGroup& G, const GroupAuto& f) {
  if ((int)f.size() != G.n) return false;
  std::vector<char> hit(G.n, 0);
  for (int g = 0; g < G.n; ++g) {
    if (f[g] < 0 || f[g] >= G.n || hit[f[g]]) return false;
    hit[f[g]] = 1;
  }
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      if (f[G.op(a, b)] != G.op(f[a], f[b])) return false;
  return true;
}

GroupAuto conj_by(const FiniteGroup& G, int s) {
  GroupAuto f(G.n);
  for (int g = 0; g < G.n; ++g) f[g] = G.op(G.op(s, g), G.inv[s]);
  return f;
}

GroupAuto inversion(const FiniteGroup& G) {
  return G.inv;
}

int FiniteCover::order() const {
  int nt = (int)pi.size();
  std::vector<int> cur(nt);
  std::iota(cur.begin(), cur.end(), 0);
  for (int r = 1; r <= nt; ++r) {
    bool id = true;
    for (int i = 0; i < nt; ++i) {
      cur[i] = gam[cur[i]];
      id &= cur[i] == i;
    }
    if (id) return r;
  }
  throw std::runtime_error("gamma is not a permutation");
}

std::vector<int> FiniteCover::fiber(int y) const {
  std::vector<int> f;
  for (int i = 0; i < (int)pi.size(); ++i)
    if (pi[i] == y) f.push_back(i);
  return f;
}

bool FiniteCover::is_branch(int y) const {
  auto f = fiber(y);
  int r = order();
  if ((int)f.size() != r) return true;
  // single free orbit
  int p = f[0];
  for (int k = 0; k < r; ++k) {
    if (k > 0 && p == f[0]) return true;
    p = gam[p];
  }
  return p != f[0];
}

void FiniteCover::validate() const {
  int nt = (int)pi.size();
  if ((int)gam.size() != nt) throw std::runtime_error("cover: size mismatch");
  std::vector<char> hit(nt, 0);
  for (int i = 0; i < nt; ++i) {
    if (pi[i] < 0 || pi[i] >= nbase) throw std::runtime_error("cover: pi out of range");
    if (gam[i] < 0 || gam[i] >= nt || hit[gam[i]])
      throw std::runtime_error("cover: gamma not a permutation");
    hit[gam[i]] = 1;
    if (pi[gam[i]] != pi[i]) throw std::runtime_error("cover: pi not gamma-invariant");
  }
  for (int y = 0; y < nbase; ++y)
    if (fiber(y).empty()) throw std::runtime_error("cover: empty fiber");
}

bool GammaGBundle::valid(std::string* why) const {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (!cov || !G) return fail("bundle: missing cover or group");
  int nt = (int)cov->pi.size();
  if ((int)twist.size() != nt) return fail("bundle: twist size");
  if (!is_automorphism(*G, rho)) return fail("bundle: rho not an automorphism");
  // gamma(p g) = gamma(p) rho(g), every point, every pair
  for (int yt = 0; yt < nt; ++yt)
    for (int g = 0; g < G->n; ++g)
      for (int h = 0; h < G->n; ++h)
        if (G->op(twist[yt], rho[G->op(g, h)]) != G->op(G->op(twist[yt], rho[g]), rho[h]))
          return fail("bundle: lift not compatible with the G-action");
  // gamma^|Gamma| = id on the total space of the bundle
  int r = cov->order();
  for (int yt = 0; yt < nt; ++yt)
    for (int g = 0; g < G->n; ++g) {
      int y = yt, c = g;
      for (int k = 0; k < r; ++k) {
        c = G->op(twist[y], rho[c]);
        y = cov->gam[y];
      }
      if (y != yt || c != g) return fail("bundle: lift does not have order |Gamma|");
    }
  return true;
}

void GammaGBundle::validate() const {
  std::string why;
  if (!valid(&why)) throw std::runtime_error(why);
}

namespace {

/* All left-translation tuples (a_yt)_{yt in fiber(y)} giving a Gamma- and
 * G-equivariant map P1|_fiber -> P2|_fiber.  The condition, checked on every
 * bundle element, is a_{gam(yt)} * c1_yt * rho1(g) = c2_yt * rho2(a_yt * g). */
std::vector<std::vector<int>> fiber_isos(const GammaGBundle& P1, const GammaGBundle& P2, int y) {
  if (P1.cov != P2.cov || P1.G != P2.G)
    throw std::invalid_argument("fiber_isos: bundles over different data");
  const FiniteGroup& G = *P1.G;
  auto F = P1.cov->fiber(y);
  int m = (int)F.size();
  std::vector<int> pos(P1.cov->pi.size(), -1);
  for (int i = 0; i < m; ++i) pos[F[i]] = i;
  std::vector<std::vector<int>> out;
  std::vector<int> a(m, 0);
  do {
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      int yt = F[i], tgt = pos[P1.cov->gam[yt]];
      for (int g = 0; g < G.n && ok; ++g)
        ok = G.op(a[tgt], G.op(P1.twist[yt], P1.rho[g])) ==
             G.op(P2.twist[yt], P2.rho[G.op(a[i], g)]);
    }
    if (ok) out.push_back(a);
  } while (next_tuple(a, G.n));
  return out;
}

} // namespace

bool local_type_equal(const GammaGBundle& P1, const GammaGBundle& P2, int y) {
  return !fiber_isos(P1, P2, y).empty();
}

Pushforward invariant_pushforward(const GammaGBundle& P_ref, const GammaGBundle& Pp) {
  const FiniteGroup& G = *P_ref.G;
  int ny = P_ref.cov->nbase;
  Pushforward out;
  out.iso.resize(ny);
  out.H.resize(ny);
  out.torsor = true;
  for (int y = 0; y < ny; ++y) {
    out.iso[y] = fiber_isos(P_ref, Pp, y);
    out.H[y] = fiber_isos(P_ref, P_ref, y);
    if (out.iso[y].empty()) {
      out.torsor = false;
      continue;
    }
    // simply transitive: the connecting element of any two isos lies in H,
    // and it is unique because it is determined pointwise
    std::set<std::vector<int>> hset(out.H[y].begin(), out.H[y].end());
    for (auto& a : out.iso[y])
      for (auto& b : out.iso[y]) {
        std::vector<int> h(a.size());
        for (size_t i = 0; i < a.size(); ++i) h[i] = G.op(G.inv[a[i]], b[i]);
        if (!hset.count(h)) out.torsor = false;
      }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> par;
  explicit UnionFind(int n) : par(n) { std::iota(par.begin(), par.end(), 0); }
  int find(int x) { return par[x] == x ? x : par[x] = find(par[x]); }
  void unite(int a, int b) { par[find(a)] = find(b); }
};

} // namespace

bool equivalence_roundtrip(const GammaGBundle& P_ref, const GammaGBundle& Pp) {
  const FiniteCover& cov = *P_ref.cov;
  const FiniteGroup& G = *P_ref.G;
  for (int y = 0; y < cov.nbase; ++y)
    if (!local_type_equal(P_ref, Pp, y))
      throw std::invalid_argument("equivalence_roundtrip: local types differ");
  Pushforward Q = invariant_pushforward(P_ref, Pp);
  if (!Q.torsor) return false;

  int nt = (int)cov.pi.size();
  std::vector<int> pos(nt, -1);
  for (int y = 0; y < cov.nbase; ++y) {
    auto F = cov.fiber(y);
    for (int i = 0; i < (int)F.size(); ++i) pos[F[i]] = i;
  }

  /* Contracted product over each total point: classes of (phi, g) under
   * (phi . h, g) ~ (phi, h_yt g).  The class of (iso[0], e) is the base
   * point; ev(phi, g) = phi_yt * g must be constant on classes and identify
   * the class set with the fiber of P'. */
  std::vector<UnionFind> cls;
  cls.reserve(nt);
  for (int yt = 0; yt < nt; ++yt) {
    int y = cov.pi[yt];
    int ni = (int)Q.iso[y].size();
    std::map<std::vector<int>, int> iidx;
    for (int i = 0; i < ni; ++i) iidx[Q.iso[y][i]] = i;
    UnionFind uf(ni * G.n);
    for (int i = 0; i < ni; ++i)
      for (auto& h : Q.H[y]) {
        std::vector<int> comp(Q.iso[y][i]);
        for (size_t k = 0; k < comp.size(); ++k) comp[k] = G.op(comp[k], h[k]);
        int j = iidx.at(comp);
        for (int g = 0; g < G.n; ++g) uf.unite(j * G.n + g, i * G.n + G.op(h[pos[yt]], g));
      }
    std::set<int> roots;
    for (int x = 0; x < ni * G.n; ++x) roots.insert(uf.find(x));
    if ((int)roots.size() != G.n) return false;
    // ev constant on classes, bijective onto the fiber of P'
    std::map<int, int> evv;
    std::set<int> image;
    for (int i = 0; i < ni; ++i)
      for (int g = 0; g < G.n; ++g) {
        int r = uf.find(i * G.n + g), e = G.op(Q.iso[y][i][pos[yt]], g);
        auto it = evv.find(r);
        if (it == evv.end()) {
          evv[r] = e;
          image.insert(e);
        } else if (it->second != e)
          return false;
      }
    if ((int)image.size() != G.n) return false;
    cls.push_back(std::move(uf));
  }

  /* Trivialize by the base class: over yt, the class of (iso[0], t)
   * represents t.  gamma sends (phi, g) over yt to (phi, c_ref rho(g)) over
   * gam(yt), so the rebuilt twist is the i=0 representative, in the class
   * structure at gam(yt), of the class of (iso[0], c_ref). */
  std::vector<int> twist2(nt, -1);
  for (int yt = 0; yt < nt; ++yt) {
    int tgt = cov.gam[yt];
    int target = cls[tgt].find(0 * G.n + P_ref.twist[yt]);
    for (int g = 0; g < G.n; ++g)
      if (cls[tgt].find(0 * G.n + g) == target) twist2[yt] = g;
    if (twist2[yt] < 0) return false;
  }

  GammaGBundle P2{&cov, &G, P_ref.rho, twist2};
  if (!P2.valid()) return false;

  // ev in the trivialization: left translation by b_yt = iso_y[0] at yt;
  // check it is a global (Gamma,G)-isomorphism P2 -> P'
  std::vector<int> b(nt);
  for (int yt = 0; yt < nt; ++yt) b[yt] = Q.iso[cov.pi[yt]][0][pos[yt]];
  for (int yt = 0; yt < nt; ++yt)
    for (int g = 0; g < G.n; ++g)
      if (G.op(b[cov.gam[yt]], G.op(P2.twist[yt], P2.rho[g])) !=
          G.op(Pp.twist[yt], Pp.rho[G.op(b[yt], g)]))
        return false;

  // reverse composition: pushing the rebuilt bundle forward and composing
  // with ev recovers Q, H-equivariantly
  Pushforward Q2 = invariant_pushforward(P_ref, P2);
  if (!Q2.torsor) return false;
  for (int y = 0; y < cov.nbase; ++y) {
    if (Q2.iso[y].size() != Q.iso[y].size()) return false;
    std::set<std::vector<int>> qset(Q.iso[y].begin(), Q.iso[y].end());
    std::set<std::vector<int>> seen;
    auto F = cov.fiber(y);
    for (auto& psi : Q2.iso[y]) {
      std::vector<int> comp(psi.size());
      for (size_t i = 0; i < psi.size(); ++i) comp[i] = G.op(b[F[i]], psi[i]);
      if (!qset.count(comp) || !seen.insert(comp).second) return false;
    }
  }
  return true;
}

std::vector<GammaGBundle> enumerate_bundles(const FiniteCover& cov, const FiniteGroup& G,
                                            const GroupAuto& rho) {
  cov.validate();
  int nt = (int)cov.pi.size();
  double work = 1;
  for (int i = 0; i < nt; ++i) work *= G.n;
  if (work > 2e5) throw std::invalid_argument("enumerate_bundles: search space too large");
  std::vector<GammaGBundle> out;
  std::vector<int> c(nt, 0);
  do {
    GammaGBundle P{&cov, &G, rho, c};
    if (P.valid()) out.push_back(P);
  } while (next_tuple(c, G.n));
  return out;
}

} // namespace twistcb
