#include "twistcb/looprep.hpp"

#include <cstdlib>
#include <stdexcept>

namespace twistcb {

int max_depth() {
  if (const char* s = std::getenv("TWISTCB_MAX_DEPTH")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 6;
}

void Laur::set(int n, const Cyc& v) {
  if (n < lo || n > hi) throw std::out_of_range("Laur: exponent outside window");
  if (v.is_zero())
    c.erase(n);
  else
    c[n] = v;
}

Cyc Laur::get(int n) const {
  auto it = c.find(n);
  return it == c.end() ? Cyc() : it->second;
}

Cyc residue(const Laur& omega) {
  if (omega.lo > -1 || omega.hi < -1)
    throw std::out_of_range("residue: window does not contain -1");
  return omega.get(-1);
}

void LoopElt::add(int n, int b, const Cyc& v) {
  if (n < lo || n > hi) throw std::out_of_range("LoopElt: exponent outside window");
  auto key = std::make_pair(n, b);
  auto it = terms.find(key);
  Cyc s = (it == terms.end() ? Cyc() : it->second) + v;
  if (s.is_zero())
    terms.erase(key);
  else
    terms[key] = s;
}

LoopElt central_bracket(const LoopElt& x, const LoopElt& y) {
  if (x.alg != y.alg) throw std::invalid_argument("central_bracket: mixed algebras");
  const LieAlgebra& g = *x.alg;
  int lo = std::min(x.lo, y.lo), hi = std::max(x.hi, y.hi);
  LoopElt out(g, lo, hi);
  for (const auto& [kx, vx] : x.terms)
    for (const auto& [ky, vy] : y.terms) {
      int n = kx.first + ky.first;
      SparseVec<Rat> br = g.bracket(kx.second, ky.second);
      for (const auto& [b, c] : br) {
        Cyc coef = vx * vy * Cyc(c);
        if (coef.is_zero()) continue;
        if (n < lo || n > hi)
          throw std::out_of_range("central_bracket: window overflow");
        out.add(n, b, coef);
      }
      // c * Res((dX|Y)): d(X t^a) pairs to a (X|Y) t^{a+b-1} dt
      if (n == 0) {
        Rat fv = g.form[kx.second][ky.second];
        if (fv != 0) out.central += vx * vy * Cyc(Rat(kx.first) * fv);
      }
    }
  return out;
}

namespace {

LoopElt gamma_pow_apply(const GammaAction& rho, int j, const LoopElt& x) {
  LoopElt out(*x.alg, x.lo, x.hi);
  out.central = x.central;
  Mat<Cyc> m = rho.power(((j % rho.p) + rho.p) % rho.p);
  for (const auto& [k, v] : x.terms)
    for (int i = 0; i < (int)m.size(); ++i) {
      Cyc c = m[i][k.second] * v;
      if (!c.is_zero()) out.add(k.first, i, c);
    }
  return out;
}

bool loop_eq(const LoopElt& a, const LoopElt& b) {
  if (!(a.central - b.central).is_zero()) return false;
  for (const auto& [k, v] : a.terms)
    if (!(v - (b.terms.count(k) ? b.terms.at(k) : Cyc())).is_zero()) return false;
  for (const auto& [k, v] : b.terms)
    if (a.terms.find(k) == a.terms.end() && !v.is_zero()) return false;
  return true;
}

} // namespace

LoopElt untwist(const GammaAction& rho, int i, const std::vector<LoopElt>& tuple) {
  if ((int)tuple.size() != rho.p) throw std::invalid_argument("untwist: tuple size != p");
  for (int j = 1; j < rho.p; ++j)
    if (!loop_eq(tuple[j], gamma_pow_apply(rho, j, tuple[0])))
      throw std::invalid_argument("untwist: not Gamma-invariant");
  return tuple[i];
}

std::vector<LoopElt> untwist_inv(const GammaAction& rho, int i, const LoopElt& x) {
  std::vector<LoopElt> out;
  for (int j = 0; j < rho.p; ++j) out.push_back(gamma_pow_apply(rho, j - i, x));
  return out;
}

/* ---- graded modules ---- */

namespace {

int dagger(const LieAlgebra& g, int b) {
  if (b < g.rank) return b;
  int r = b - g.rank;
  return r < g.npos() ? b + g.npos() : b - g.npos();
}

void madd(MVec& out, const MWord& w, const Rat& c) {
  auto it = out.find(w);
  if (it == out.end()) {
    if (c != 0) out.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// creation X_b t^{-k}: straightened insertion into the sorted word
void cre(const GradedModule& M, int k, int b, const LoopMono& mono, int base,
         const Rat& c, MVec& out) {
  auto gen = std::make_pair(k, b);
  if (mono.empty() || gen <= mono.front()) {
    LoopMono nm;
    nm.reserve(mono.size() + 1);
    nm.push_back(gen);
    nm.insert(nm.end(), mono.begin(), mono.end());
    madd(out, {std::move(nm), base}, c);
    return;
  }
  auto g1 = mono.front();
  LoopMono rest(mono.begin() + 1, mono.end());
  MVec tmp;
  cre(M, k, b, rest, base, c, tmp);
  for (auto& [w, v] : tmp) {
    LoopMono nm;
    nm.reserve(w.first.size() + 1);
    nm.push_back(g1);
    nm.insert(nm.end(), w.first.begin(), w.first.end());
    madd(out, {std::move(nm), w.second}, v);
  }
  for (const auto& [bc, bv] : M.alg->bracket(b, g1.second)) {
    Rat cc = c * bv;
    cre(M, k + g1.first, bc, rest, base, cc, out);
  }
}

// annihilation / zero mode X_b t^n, n >= 0: commute through the word
void ann(const GradedModule& M, int n, int b, const LoopMono& mono, int base,
         const Rat& c, MVec& out) {
  if (mono.empty()) {
    if (n > 0) return;
    const Mat<Rat>& a = M.rep.action[b];
    for (int i = 0; i < M.rep.dim; ++i)
      if (a[i][base] != 0) madd(out, {LoopMono{}, i}, c * a[i][base]);
    return;
  }
  auto g1 = mono.front();
  LoopMono rest(mono.begin() + 1, mono.end());
  int m = n - g1.first;
  for (const auto& [bc, bv] : M.alg->bracket(b, g1.second)) {
    Rat cc = c * bv;
    if (m < 0)
      cre(M, -m, bc, rest, base, cc, out);
    else
      ann(M, m, bc, rest, base, cc, out);
  }
  if (m == 0 && n > 0) {
    // central term n (X|Y) c, with c acting as the level
    Rat fv = M.alg->form[b][g1.second];
    if (fv != 0) madd(out, {rest, base}, c * Rat(n) * fv * Rat(M.level));
  }
  MVec tmp;
  ann(M, n, b, rest, base, c, tmp);
  for (auto& [w, v] : tmp) cre(M, g1.first, g1.second, w.first, w.second, v, out);
}

void enum_words(int d, std::pair<int, int> lo, int gdim, LoopMono& cur,
                std::vector<LoopMono>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = lo.first; k <= d; ++k)
    for (int b = (k == lo.first ? lo.second : 0); b < gdim; ++b) {
      cur.push_back({k, b});
      enum_words(d - k, {k, b}, gdim, cur, out);
      cur.pop_back();
    }
}

} // namespace

MVec loop_apply(const GradedModule& m, int n, int b, const MVec& v) {
  MVec out;
  for (const auto& [w, c] : v) {
    if (n < 0)
      cre(m, -n, b, w.first, w.second, c, out);
    else
      ann(m, n, b, w.first, w.second, c, out);
  }
  return out;
}

MVec mvec_axpy(MVec v, const Rat& a, const MVec& w) {
  for (const auto& [k, c] : w) madd(v, k, a * c);
  return v;
}

Rat shap_pair(const GradedModule& m, const MWord& u, const MVec& v) {
  MVec w = v;
  for (const auto& [k, b] : u.first) w = loop_apply(m, k, dagger(*m.alg, b), w);
  Rat s = 0;
  for (const auto& [key, c] : w)
    if (key.first.empty()) s += c * m.rep.cform[u.second][key.second];
  return s;
}

GradedModule verma(const LieAlgebra& g, const Weight& lambda, long level, int depth) {
  if (!g.dominant(lambda)) throw std::invalid_argument("verma: label not dominant");
  if (depth < 0 || depth > max_depth())
    throw std::out_of_range("verma: depth beyond configured bound");
  GradedModule m;
  m.alg = &g;
  m.rep = build_irrep(g, lambda);
  m.level = level;
  m.depth = depth;
  m.words.resize(depth + 1);
  m.index.resize(depth + 1);
  for (int d = 0; d <= depth; ++d) {
    std::vector<LoopMono> monos;
    LoopMono cur;
    enum_words(d, {1, 0}, g.dim(), cur, monos);
    for (const auto& mo : monos)
      for (int i = 0; i < m.rep.dim; ++i) {
        m.index[d][{mo, i}] = (int)m.words[d].size();
        m.words[d].push_back({mo, i});
      }
  }
  return m;
}

GradedModule integrable_quotient(const GradedModule& vm) {
  const LieAlgebra& g = *vm.alg;
  long lvl = g.level_of(vm.rep.label);
  if (vm.level < 0 || lvl > vm.level)
    throw std::invalid_argument("integrable_quotient: label not in P_level");
  GradedModule m = vm;
  m.quot = true;
  m.sel.resize(m.depth + 1);
  m.gram_sel.resize(m.depth + 1);
  m.gram_inv.resize(m.depth + 1);
  for (int d = 0; d <= m.depth; ++d) {
    int n = (int)m.words[d].size();
    Mat<Rat> gram = mat_zero<Rat>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        MVec unit;
        unit[m.words[d][j]] = 1;
        gram[i][j] = shap_pair(vm, m.words[d][i], unit);
        gram[j][i] = gram[i][j];
      }
    SpanBuilder<Rat> span;
    for (int i = 0; i < n; ++i) {
      SparseVec<Rat> row;
      for (int j = 0; j < n; ++j)
        if (gram[i][j] != 0) row[j] = gram[i][j];
      if (span.add(row)) m.sel[d].push_back(i);
    }
    int r = (int)m.sel[d].size();
    m.gram_sel[d] = mat_zero<Rat>(r, n);
    Mat<Rat> gsub = mat_zero<Rat>(r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < n; ++j) m.gram_sel[d][i][j] = gram[m.sel[d][i]][j];
      for (int j = 0; j < r; ++j) gsub[i][j] = gram[m.sel[d][i]][m.sel[d][j]];
    }
    m.gram_inv[d] = r ? mat_inverse(gsub) : Mat<Rat>{};
  }
  return m;
}

std::vector<Rat> GradedModule::coords(int d, const MVec& v) const {
  if (!quot) {
    std::vector<Rat> out(words[d].size(), Rat(0));
    for (const auto& [w, c] : v) {
      auto it = index[d].find(w);
      if (it == index[d].end()) throw std::logic_error("coords: word not at this degree");
      out[it->second] = c;
    }
    return out;
  }
  int r = (int)sel[d].size();
  std::vector<Rat> rhs(r, Rat(0));
  for (const auto& [w, c] : v) {
    auto it = index[d].find(w);
    if (it == index[d].end()) throw std::logic_error("coords: word not at this degree");
    for (int i = 0; i < r; ++i) {
      Rat t = c * gram_sel[d][i][it->second];
      rhs[i] += t;
    }
  }
  std::vector<Rat> out(r, Rat(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat t = gram_inv[d][i][j] * rhs[j];
      out[i] += t;
    }
  return out;
}

Mat<Rat> mode_matrix(const GradedModule& m, int n, int b, int d) {
  int dt = d - n;
  if (d < 0 || d > m.depth || dt < 0 || dt > m.depth) return {};
  Mat<Rat> out = mat_zero<Rat>(m.dim(dt), m.dim(d));
  for (int j = 0; j < m.dim(d); ++j) {
    MVec v;
    v[m.word_at(d, j)] = 1;
    auto img = loop_apply(m, n, b, v);
    auto col = m.coords(dt, img);
    for (int i = 0; i < m.dim(dt); ++i) out[i][j] = col[i];
  }
  return out;
}

} // namespace twistcb
