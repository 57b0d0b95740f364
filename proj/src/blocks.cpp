#include "twistcb/blocks.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace twistcb {

namespace {

/* ---- truncated tensor coinvariants ---- */

using Tuple = std::vector<std::pair<int, int>>; // (degree, index) per factor

struct Tensor {
  std::vector<Tuple> basis;
  std::map<Tuple, int> index;
};

void enum_tuples(const std::vector<GradedModule>& mods, int D, size_t j, int used,
                 Tuple& cur, Tensor& out) {
  if (j == mods.size()) {
    out.index.emplace(cur, (int)out.basis.size());
    out.basis.push_back(cur);
    return;
  }
  for (int d = 0; d + used <= D; ++d)
    for (int i = 0; i < mods[j].dim(d); ++i) {
      cur.push_back({d, i});
      enum_tuples(mods, D, j + 1, used + d, cur, out);
      cur.pop_back();
    }
}

struct ModeCache {
  std::map<std::tuple<int, int, int, int>, Mat<Rat>> c;
  const Mat<Rat>& get(const std::vector<GradedModule>& mods, int j, int e, int b, int d) {
    auto key = std::make_tuple(j, e, b, d);
    auto it = c.find(key);
    if (it == c.end()) it = c.emplace(key, mode_matrix(mods[j], e, b, d)).first;
    return it->second;
  }
};

void check_labels(const LieAlgebra& g, const std::vector<Labeled>& labels, long level) {
  for (auto& l : labels) {
    if ((int)l.wt.size() != g.rank || !g.dominant(l.wt) || g.level_of(l.wt) > level)
      throw std::invalid_argument("label outside the level-bounded alcove");
  }
}

Mat<Rat> transpose(const Mat<Rat>& a) {
  if (a.empty()) return {};
  Mat<Rat> o = mat_zero<Rat>((int)a[0].size(), (int)a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) o[j][i] = a[i][j];
  return o;
}

} // namespace

RankReport coinvariant_rank(const KummerModel& m, const std::vector<Rat>& punctures,
                            const GammaAction& rho, const std::vector<Labeled>& labels,
                            long level, int depth) {
  const LieAlgebra& g = *rho.alg;
  if (punctures.size() != labels.size())
    throw std::invalid_argument("one label per puncture required");
  check_labels(g, labels, level);
  if (depth < 0 || depth > max_depth()) throw std::invalid_argument("bad depth");

  std::vector<GradedModule> mods;
  for (auto& l : labels) mods.push_back(integrable_quotient(verma(g, l.wt, level, depth)));

  // one generator family per pole bound; a bound-(k-1) generator is a
  // combination of bound-k ones, so each vector only needs the maximal bound
  std::vector<GlobalAlgebra> algebras;
  std::vector<std::vector<std::vector<std::vector<Cyc>>>> expans; // [k][gen][puncture]
  for (int k = 0; k <= depth; ++k) {
    algebras.push_back(global_algebra(m, punctures, rho, k));
    auto& a = algebras.back();
    expans.emplace_back();
    for (auto& gen : a.gens) {
      expans.back().emplace_back();
      for (size_t j = 0; j < punctures.size(); ++j)
        expans.back().back().push_back(expand_gen(a, gen, (int)j, labels[j].triv, depth));
    }
  }

  ModeCache cache;
  RankReport rep;
  long prev = -1;
  for (int D = 0; D <= depth; ++D) {
    Tensor t;
    Tuple cur;
    enum_tuples(mods, D, 0, 0, cur, t);
    SpanBuilder<Cyc> sb;
    for (auto& tup : t.basis) {
      int deg = 0;
      for (auto& [d, i] : tup) deg += d;
      int k = D - deg;
      auto& alg = algebras[k];
      for (size_t gi = 0; gi < alg.gens.size(); ++gi) {
        auto& gen = alg.gens[gi];
        SparseVec<Cyc> img;
        for (size_t j = 0; j < punctures.size(); ++j) {
          const auto& ex = expans[k][gi][j]; // exponents -k .. depth
          int dj = tup[j].first, col = tup[j].second;
          for (int e = -k; e <= dj; ++e) {
            const Cyc& c = ex[e + k];
            if (c.is_zero()) continue;
            for (int b = 0; b < g.dim(); ++b) {
              if (gen.eigvec[b].is_zero()) continue;
              const Mat<Rat>& M = cache.get(mods, (int)j, e, b, dj);
              if (M.empty()) continue;
              Cyc cb = c * gen.eigvec[b];
              for (int r = 0; r < (int)M.size(); ++r) {
                if (M[r][col] == 0) continue;
                Tuple key = tup;
                key[j] = {dj - e, r};
                Cyc term = cb * Cyc(M[r][col]);
                auto& slot = img[t.index.at(key)];
                slot += term;
                if (slot.is_zero()) img.erase(t.index.at(key));
              }
            }
          }
        }
        if (!img.empty()) sb.add(img);
      }
    }
    long rank = (long)t.basis.size() - sb.rank();
    rep.rank = rank;
    rep.depth = D;
    rep.stabilized = (D > 0 && rank == prev);
    prev = rank;
  }
  return rep;
}

/* ---- Kac-Walton fusion ---- */

namespace {

// reduce v to the interior of the level-L affine alcove under the dot action;
// sign 0 on a wall
std::pair<Weight, int> affine_reduce(const LieAlgebra& g, Weight v, long L) {
  Weight th = g.weight_of_root(g.theta + 1);
  int sign = 1;
  for (int guard = 0; guard < 10000; ++guard) {
    bool moved = false;
    for (int i = 0; i < g.rank && !moved; ++i) {
      if (v[i] == 0) return {v, 0};
      if (v[i] < 0) {
        long c = v[i];
        for (int j = 0; j < g.rank; ++j) v[j] -= c * g.cartan[j][i]; // s_i
        sign = -sign;
        moved = true;
      }
    }
    if (moved) continue;
    long lv = g.level_of(v);
    if (lv == L) return {v, 0};
    if (lv > L) {
      long c = lv - L;
      for (int j = 0; j < g.rank; ++j) v[j] -= c * th[j];
      sign = -sign;
      continue;
    }
    return {v, sign};
  }
  throw std::logic_error("affine reduction did not terminate");
}

} // namespace

long FusionTable::rank(const Weight& a, const Weight& b, const Weight& c) const {
  std::vector<Weight> key{a, b, c};
  std::sort(key.begin(), key.end());
  auto it = n.find(key);
  return it == n.end() ? 0 : it->second;
}

FusionTable fusion_table(const LieAlgebra& g, long level) {
  FusionTable t;
  t.alg = &g;
  t.level = level;
  auto P = g.enumerate_levels(level);
  Weight rho(g.rank, 1);
  long L = level + g.level_of(rho) + 1; // level + dual Coxeter number
  std::map<Weight, Irrep> reps;
  for (auto& mu : P) reps.emplace(mu, build_irrep(g, mu));
  // ordered N_{lambda mu}^{nu}, then symmetrize with a consistency check
  std::map<std::vector<Weight>, long> ordered;
  for (auto& la : P)
    for (auto& mu : P) {
      const Irrep& rm = reps.at(mu);
      std::map<Weight, long> out;
      for (int k = 0; k < rm.dim; ++k) {
        Weight v(g.rank);
        for (int i = 0; i < g.rank; ++i) v[i] = la[i] + rm.wt[k][i] + 1;
        auto [w, s] = affine_reduce(g, v, L);
        if (!s) continue;
        for (int i = 0; i < g.rank; ++i) w[i] -= 1;
        out[w] += s;
      }
      for (auto& [nu, c] : out) {
        if (c < 0 || g.level_of(nu) > level)
          throw std::logic_error("fusion alcove reduction out of range");
        if (c) ordered[{la, mu, dual_weight(g, nu)}] = c;
      }
    }
  auto look = [&](const Weight& a, const Weight& b, const Weight& c) -> long {
    auto it = ordered.find({a, b, c});
    return it == ordered.end() ? 0 : it->second;
  };
  for (auto& a : P)
    for (auto& b : P)
      for (auto& c : P) {
        long v = look(a, b, c);
        if (look(b, a, c) != v || look(a, c, b) != v || look(c, a, b) != v ||
            look(b, c, a) != v || look(c, b, a) != v)
          throw std::logic_error("fusion table not symmetric");
        if (!v) continue;
        std::vector<Weight> key{a, b, c};
        std::sort(key.begin(), key.end());
        t.n[key] = v;
      }
  return t;
}

long genus0_rank(const FusionTable& t, std::vector<Weight> labels) {
  const LieAlgebra& g = *t.alg;
  while (labels.size() < 3) labels.push_back(Weight(g.rank, 0));
  if (labels.size() == 3) return t.rank(labels[0], labels[1], labels[2]);
  long s = 0;
  for (auto& mu : g.enumerate_levels(t.level)) {
    long c = t.rank(labels[0], labels[1], mu);
    if (!c) continue;
    std::vector<Weight> rest{dual_weight(g, mu)};
    rest.insert(rest.end(), labels.begin() + 2, labels.end());
    s += c * genus0_rank(t, rest);
  }
  return s;
}

PropReport propagation_check(const KummerModel& m, const std::vector<Rat>& punctures,
                             const GammaAction& rho, const std::vector<Labeled>& labels,
                             const std::vector<Rat>& extra, long level, int depth) {
  PropReport r;
  r.base = coinvariant_rank(m, punctures, rho, labels, level, depth);
  auto punct2 = punctures;
  auto labels2 = labels;
  for (auto& a : extra) {
    punct2.push_back(a);
    labels2.push_back({Weight(rho.alg->rank, 0), 0});
  }
  r.extended = coinvariant_rank(m, punct2, rho, labels2, level, depth);
  r.ok = r.base.rank == r.extended.rank && r.base.stabilized && r.extended.stabilized;
  return r;
}

/* ---- factorization recursion ---- */

namespace {

long degen_rec(const CoveringGraph& g, std::map<std::string, Labeled> labels,
               const FusionTable& t, int& uid) {
  const LieAlgebra& A = *t.alg;
  if (!g.edges.empty()) {
    auto n = normalize(g, 0);
    std::string lp = "&+" + std::to_string(uid), lm = "&-" + std::to_string(uid);
    ++uid;
    n.legs[n.legs.size() - 2].label = lp;
    n.legs.back().label = lm;
    long s = 0;
    for (auto& w : A.enumerate_levels(t.level)) {
      auto lab = labels;
      lab[lp] = {w, 0};
      lab[lm] = {dual_weight(A, w), 0};
      s += degen_rec(n, lab, t, uid);
    }
    return s;
  }
  long prod = 1;
  for (int v = 0; v < (int)g.vertices.size(); ++v) {
    if (g.vertices[v].genus > 0)
      throw std::runtime_error("unsupported piece: positive-genus component without nodes");
    for (auto& b : g.branch)
      if (b.vertex == v)
        throw std::runtime_error("unsupported piece: branch point on elementary component");
    std::vector<Weight> ls;
    for (auto& l : g.legs)
      if (l.vertex == v) ls.push_back(labels.at(l.label).wt);
    prod *= genus0_rank(t, ls);
  }
  return prod;
}

} // namespace

long degeneration_rank(const CoveringGraph& g, const std::map<std::string, Labeled>& labels,
                       const FusionTable& table) {
  for (auto& l : g.legs)
    if (!labels.count(l.label))
      throw std::invalid_argument("missing label for leg " + l.label);
  std::vector<Labeled> all;
  for (auto& kv : labels) all.push_back(kv.second);
  check_labels(*table.alg, all, table.level);
  int uid = 0;
  return degen_rec(g, labels, table, uid);
}

/* ---- sewing ---- */

namespace {

// the g-invariant pairing between two dual irreps, normalized to leading 1
Mat<Rat> invariant_pairing(const LieAlgebra& g, const Irrep& a, const Irrep& b) {
  int n = a.dim, m = b.dim;
  Mat<Rat> sys = mat_zero<Rat>(g.dim() * n * m, n * m);
  int row = 0;
  for (int bb = 0; bb < g.dim(); ++bb)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        for (int r = 0; r < n; ++r) sys[row][r * m + j] += a.action[bb][r][i];
        for (int c = 0; c < m; ++c) sys[row][i * m + c] += b.action[bb][c][j];
        ++row;
      }
  auto ker = kernel_basis(sys);
  if (ker.size() != 1) throw std::logic_error("invariant pairing not one-dimensional");
  Rat lead = 0;
  for (auto& v : ker[0])
    if (v != 0) {
      lead = v;
      break;
    }
  Mat<Rat> out = mat_zero<Rat>(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[i][j] = ker[0][i * m + j] / lead;
  return out;
}

} // namespace

SewingElement sewing_element(const LieAlgebra& g, const Weight& w, long level, int depth) {
  SewingElement s;
  s.w = w;
  s.wdual = dual_weight(g, w);
  s.mod = integrable_quotient(verma(g, w, level, depth));
  s.dual_mod = integrable_quotient(verma(g, s.wdual, level, depth));
  Mat<Rat> b0 = invariant_pairing(g, s.mod.rep, s.dual_mod.rep);
  s.b.resize(depth + 1);
  s.eps.resize(depth + 1);
  // degree 0: the module basis is the irrep basis up to the word order
  int n0 = s.mod.dim(0), m0 = s.dual_mod.dim(0);
  s.b[0] = mat_zero<Rat>(n0, m0);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < m0; ++j)
      s.b[0][i][j] = b0[s.mod.word_at(0, i).second][s.dual_mod.word_at(0, j).second];
  for (int e = 1; e <= depth; ++e) {
    int n = s.mod.dim(e), m = s.dual_mod.dim(e);
    s.b[e] = mat_zero<Rat>(n, m);
    for (int iv = 0; iv < n; ++iv) {
      const MWord& word = s.mod.word_at(e, iv);
      auto [k, bb] = word.first.front();
      MWord u{LoopMono(word.first.begin() + 1, word.first.end()), word.second};
      MVec uvec;
      uvec[u] = 1;
      auto uc = s.mod.coords(e - k, uvec);
      // row functional b(u, -) at degree e - k
      std::vector<Rat> rowf(s.dual_mod.dim(e - k), Rat(0));
      for (int i = 0; i < (int)uc.size(); ++i) {
        if (uc[i] == 0) continue;
        for (int j = 0; j < (int)rowf.size(); ++j) rowf[j] += uc[i] * s.b[e - k][i][j];
      }
      for (int iw = 0; iw < m; ++iw) {
        MVec wv;
        wv[s.dual_mod.word_at(e, iw)] = 1;
        auto wc = s.dual_mod.coords(e - k, loop_apply(s.dual_mod, k, bb, wv));
        Rat acc = 0;
        for (int j = 0; j < (int)wc.size(); ++j) acc += rowf[j] * wc[j];
        s.b[e][iv][iw] = Rat(0) - acc;
      }
    }
  }
  for (int e = 0; e <= depth; ++e) {
    int n = s.mod.dim(e), m = s.dual_mod.dim(e);
    if (n != m || (n && mat_rank(s.b[e]) != n))
      throw std::logic_error("degenerate sewing pairing at degree " + std::to_string(e));
    s.eps[e] = n ? mat_inverse(transpose(s.b[e])) : Mat<Rat>{};
  }
  return s;
}

bool sewing_annihilates(const SewingElement& s, int mmax) {
  const LieAlgebra& g = *s.mod.alg;
  int depth = s.mod.depth;
  for (int bb = 0; bb < g.dim(); ++bb)
    for (int m = -mmax; m <= mmax; ++m)
      for (int d = 0; d <= depth; ++d) {
        // tau^d coefficient of (X t+^m, X t-^{-m} tau^{max(m,0)} ...) acting
        int d1 = d - std::max(-m, 0), d2 = d - std::max(m, 0);
        if (d1 < 0 || d2 < 0) continue;
        int rows = s.mod.dim(d2), cols = s.dual_mod.dim(d1);
        if (!rows || !cols) continue;
        Mat<Rat> acc = mat_zero<Rat>(rows, cols);
        auto m1 = mode_matrix(s.mod, m, bb, d1); // degree d1 -> d2 on the left factor
        if (!m1.empty() && !s.eps[d1].empty()) {
          auto t1 = mat_mul(m1, s.eps[d1]);
          acc = t1;
        }
        auto m2 = mode_matrix(s.dual_mod, -m, bb, d2); // d2 -> d1 on the right factor
        if (!m2.empty() && !s.eps[d2].empty()) {
          auto t2 = mat_mul(s.eps[d2], transpose(m2));
          for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) acc[i][j] += t2[i][j];
        }
        if (!mat_is_zero(acc)) return false;
      }
  return true;
}

RankReport nodal_genus1_rank(const LieAlgebra& g, const Weight& lambda, long level, int depth) {
  auto H = integrable_quotient(verma(g, lambda, level, depth));
  RankReport rep;
  long prev = -1;
  for (int D = 0; D <= depth; ++D) {
    std::vector<int> off(D + 2, 0);
    for (int d = 0; d <= D; ++d) off[d + 1] = off[d] + H.dim(d);
    SpanBuilder<Rat> sb;
    // functions on the nodal cubic regular off the puncture at x = 1:
    // constants and (x-1)^{-k} + (-1)^k (x-1)^{-1}, k >= 2
    for (int d = 0; d <= D; ++d)
      for (int i = 0; i < H.dim(d); ++i)
        for (int b = 0; b < g.dim(); ++b) {
          {
            auto M = mode_matrix(H, 0, b, d);
            SparseVec<Rat> img;
            for (int r = 0; r < (int)M.size(); ++r)
              if (M[r][i] != 0) img[off[d] + r] = M[r][i];
            if (!img.empty()) sb.add(img);
          }
          for (int k = 2; k + d <= D; ++k) {
            SparseVec<Rat> img;
            auto deep = mode_matrix(H, -k, b, d);
            for (int r = 0; r < (int)deep.size(); ++r)
              if (deep[r][i] != 0) img[off[d + k] + r] += deep[r][i];
            auto one = mode_matrix(H, -1, b, d);
            Rat sgn = (k % 2) ? Rat(-1) : Rat(1);
            for (int r = 0; r < (int)one.size(); ++r)
              if (one[r][i] != 0) img[off[d + 1] + r] += sgn * one[r][i];
            for (auto it = img.begin(); it != img.end();)
              it = it->second == 0 ? img.erase(it) : std::next(it);
            if (!img.empty()) sb.add(img);
          }
        }
    long rank = off[D + 1] - sb.rank();
    rep.rank = rank;
    rep.depth = D;
    rep.stabilized = (D > 0 && rank == prev);
    prev = rank;
  }
  return rep;
}

SewReport sewing_map_check(const LieAlgebra& g, long level, int depth) {
  SewReport r;
  std::ostringstream det;
  auto nod = nodal_genus1_rank(g, Weight(g.rank, 0), level, depth);
  r.nodal_rank = nod.rank;
  auto table = fusion_table(g, level);
  CoveringGraph gr;
  gr.p = 2;
  gr.vertices = {{0}};
  gr.edges = {{0, 0}};
  gr.legs = {{0, "s1"}};
  std::map<std::string, Labeled> lab{{"s1", Labeled{Weight(g.rank, 0), 0}}};
  r.factor_rank = degeneration_rank(gr, lab, table);
  bool ok = nod.stabilized && r.nodal_rank == r.factor_rank;
  det << "nodal=" << r.nodal_rank << (nod.stabilized ? "" : " (unstable)")
      << " factor=" << r.factor_rank;
  int sd = std::min(depth, 2);
  for (auto& w : g.enumerate_levels(level)) {
    auto s = sewing_element(g, w, level, sd);
    // pairing eps(W)_0 back through b is multiplication by dim W
    Rat scale = 0;
    for (size_t i = 0; i < s.b[0].size(); ++i)
      for (size_t j = 0; j < s.b[0][i].size(); ++j) scale += s.b[0][i][j] * s.eps[0][i][j];
    bool sok = scale == Rat(s.mod.rep.dim) && scale != 0;
    // tau^1 coefficient sits in the degree-(-1, -1) inserted components
    bool bok = (int)s.eps[1].size() == s.mod.dim(1) &&
               (s.eps[1].empty() || (int)s.eps[1][0].size() == s.dual_mod.dim(1));
    det << " [W dim " << s.mod.rep.dim << ": scale " << (sok ? "ok" : "BAD")
        << ", tau1 " << (bok ? "ok" : "BAD") << "]";
    ok = ok && sok && bok;
  }
  r.ok = ok;
  r.detail = det.str();
  return r;
}

} // namespace twistcb
