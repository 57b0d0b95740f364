#include "twistcb/irrep.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace twistcb {

namespace {

using Mono = std::vector<int>;         // ascending positive-root indices
using VermaVec = std::map<Mono, Rat>;  // formal combination of monomials

void vv_add(VermaVec& a, const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto it = a.find(m);
  if (it == a.end()) {
    a.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}

void vv_axpy(VermaVec& a, const Rat& c, const VermaVec& b) {
  for (const auto& [m, v] : b) vv_add(a, m, c * v);
}

struct VermaOps {
  const LieAlgebra& g;
  Weight lambda;

  Weight weight_of(const Mono& m) const {
    Weight w = lambda;
    for (int r : m) {
      Weight rw = g.weight_of_root(r + 1);
      for (int i = 0; i < g.rank; ++i) w[i] -= rw[i];
    }
    return w;
  }

  VermaVec apply_f(int r, const Mono& m) const {
    VermaVec out;
    if (m.empty() || r <= m.front()) {
      Mono n;
      n.reserve(m.size() + 1);
      n.push_back(r);
      n.insert(n.end(), m.begin(), m.end());
      out.emplace(std::move(n), Rat(1));
      return out;
    }
    int s = m.front();
    Mono rest(m.begin() + 1, m.end());
    VermaVec t1 = apply_f(r, rest);
    for (const auto& [mm, c] : t1) {
      Mono n;
      n.reserve(mm.size() + 1);
      n.push_back(s);
      n.insert(n.end(), mm.begin(), mm.end());
      vv_add(out, n, c);
    }
    if (int sum = g.root_lookup_sum(-(r + 1), -(s + 1))) {
      Rat n = g.N(-(r + 1), -(s + 1));
      VermaVec t2 = apply_f(-sum - 1, rest);
      vv_axpy(out, n, t2);
    }
    return out;
  }

  VermaVec apply_f_vec(int r, const VermaVec& v) const {
    VermaVec out;
    for (const auto& [m, c] : v) vv_axpy(out, c, apply_f(r, m));
    return out;
  }

  VermaVec apply_e(int r, const Mono& m) const {
    VermaVec out;
    if (m.empty()) return out; // e_r v_lambda = 0
    int s = m.front();
    Mono rest(m.begin() + 1, m.end());
    {
      VermaVec inner = apply_e(r, rest);
      out = apply_f_vec(s, inner);
    }
    if (r == s) {
      Weight mu = weight_of(rest);
      Rat scal = Rat(g.pair_coroot(mu, r + 1));
      VermaVec rv;
      rv.emplace(rest, Rat(1));
      vv_axpy(out, scal, rv);
    } else if (int dsum = g.root_lookup_sum(r + 1, -(s + 1))) {
      Rat n = g.N(r + 1, -(s + 1));
      VermaVec t = dsum > 0 ? apply_e(dsum - 1, rest) : apply_f(-dsum - 1, rest);
      vv_axpy(out, n, t);
    }
    return out;
  }

  VermaVec apply_e_vec(int r, const VermaVec& v) const {
    VermaVec out;
    for (const auto& [m, c] : v) vv_axpy(out, c, apply_e(r, m));
    return out;
  }

  VermaVec apply_h(int i, const VermaVec& v) const {
    VermaVec out;
    for (const auto& [m, c] : v) {
      Weight mu = weight_of(m);
      vv_add(out, m, c * Rat(mu[i]));
    }
    return out;
  }

  // contravariant pairing S(b, w): omega(b) applied to w, coefficient of 1
  Rat shap(const Mono& b, const VermaVec& w) const {
    VermaVec cur = w;
    for (int r : b) cur = apply_e_vec(r, cur); // omega reverses; leftmost acts first
    auto it = cur.find(Mono{});
    return it == cur.end() ? Rat(0) : it->second;
  }
};

// multisets of positive roots with coordinate sum k, ascending monomials
void enum_monos(const LieAlgebra& g, std::vector<int>& k, int rmin, Mono& cur,
                std::vector<Mono>& out) {
  if (std::all_of(k.begin(), k.end(), [](int x) { return x == 0; })) {
    out.push_back(cur);
    return;
  }
  for (int r = rmin; r < g.npos(); ++r) {
    const auto& c = g.pos_roots[r];
    bool fits = true;
    for (int i = 0; i < g.rank; ++i)
      if (k[i] < c[i]) { fits = false; break; }
    if (!fits) continue;
    for (int i = 0; i < g.rank; ++i) k[i] -= c[i];
    cur.push_back(r);
    enum_monos(g, k, r, cur, out);
    cur.pop_back();
    for (int i = 0; i < g.rank; ++i) k[i] += c[i];
  }
}

struct WSpace {
  std::vector<Mono> monos;  // full Verma weight-space basis
  std::vector<int> sel;     // indices of chosen V-basis monomials
  Mat<Rat> gram;            // full Gram
  Mat<Rat> gram_sel_inv;    // inverse of the selected block
  std::vector<int> glob;    // global index per selected monomial
};

} // namespace

Irrep build_irrep(const LieAlgebra& g, const Weight& lambda, long dim_bound) {
  if (!g.dominant(lambda)) throw std::invalid_argument("irrep: non-dominant weight");
  Rat wd = g.weyl_dim(lambda);
  if (wd > dim_bound) throw std::invalid_argument("irrep: dimension above bound");

  VermaOps ops{g, lambda};
  std::map<Weight, WSpace> spaces;

  // simple-root coordinates of lambda - mu, or empty when not expressible
  Mat<Rat> cartanQ = mat_zero<Rat>(g.rank, g.rank);
  for (int i = 0; i < g.rank; ++i)
    for (int j = 0; j < g.rank; ++j) cartanQ[i][j] = g.cartan[i][j];
  Mat<Rat> cartan_inv = mat_inverse(cartanQ);

  auto depth_coords = [&](const Weight& mu, std::vector<int>& k) {
    std::vector<Rat> diff(g.rank);
    for (int i = 0; i < g.rank; ++i) diff[i] = Rat(lambda[i] - mu[i]);
    k.assign(g.rank, 0);
    for (int j = 0; j < g.rank; ++j) {
      Rat v = 0;
      for (int i = 0; i < g.rank; ++i) v += cartan_inv[j][i] * diff[i];
      if (v.get_den() != 1 || v < 0) return false;
      k[j] = (int)v.get_num().get_si();
    }
    return true;
  };

  std::deque<Weight> queue{lambda};
  std::map<Weight, bool> visited{{lambda, true}};
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    std::vector<int> k;
    if (!depth_coords(mu, k)) continue;
    std::vector<Mono> monos;
    Mono cur;
    enum_monos(g, k, 0, cur, monos);
    if (monos.empty()) continue;
    WSpace sp;
    sp.monos = monos;
    int n = monos.size();
    sp.gram = mat_zero<Rat>(n, n);
    for (int i = 0; i < n; ++i) {
      VermaVec wj;
      wj.emplace(monos[i], Rat(1));
      for (int j = i; j < n; ++j) {
        Rat s = ops.shap(monos[j], wj);
        sp.gram[i][j] = sp.gram[j][i] = s;
      }
    }
    SpanBuilder<Rat> rows;
    for (int i = 0; i < n; ++i) {
      SparseVec<Rat> row;
      for (int j = 0; j < n; ++j)
        if (sp.gram[i][j] != 0) row[j] = sp.gram[i][j];
      if (rows.add(std::move(row))) sp.sel.push_back(i);
    }
    if (sp.sel.empty()) continue;
    int m = sp.sel.size();
    Mat<Rat> block = mat_zero<Rat>(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) block[i][j] = sp.gram[sp.sel[i]][sp.sel[j]];
    sp.gram_sel_inv = mat_inverse(block);
    spaces.emplace(mu, std::move(sp));
    for (int i = 0; i < g.rank; ++i) {
      Weight nu = mu;
      Weight rw = g.weight_of_root(i + 1);
      for (int j = 0; j < g.rank; ++j) nu[j] -= rw[j];
      if (!visited[nu]) {
        visited[nu] = true;
        queue.push_back(nu);
      }
    }
  }

  Irrep V;
  V.alg = &g;
  V.label = lambda;
  int total = 0;
  for (auto& [mu, sp] : spaces) {
    sp.glob.resize(sp.sel.size());
    for (size_t i = 0; i < sp.sel.size(); ++i) {
      sp.glob[i] = total++;
      V.wt.push_back(mu);
    }
  }
  V.dim = total;
  if (Rat(total) != wd) throw std::logic_error("irrep: Weyl dimension oracle mismatch");
  V.hw = spaces.at(lambda).glob[0];

  // project a Verma vector at weight mu onto the chosen basis
  auto project = [&](const Weight& mu, const VermaVec& w, std::vector<std::pair<int, Rat>>& out) {
    out.clear();
    auto it = spaces.find(mu);
    if (it == spaces.end()) return; // weight not in V: image lies in the radical
    const WSpace& sp = it->second;
    int m = sp.sel.size();
    std::vector<Rat> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = ops.shap(sp.monos[sp.sel[i]], w);
    for (int i = 0; i < m; ++i) {
      Rat c = 0;
      for (int j = 0; j < m; ++j) c += sp.gram_sel_inv[i][j] * rhs[j];
      if (c != 0) out.emplace_back(sp.glob[i], c);
    }
  };

  V.action.assign(g.dim(), mat_zero<Rat>(total, total));
  std::vector<std::pair<int, Rat>> coords;
  for (const auto& [mu, sp] : spaces) {
    for (size_t bi = 0; bi < sp.sel.size(); ++bi) {
      VermaVec v;
      v.emplace(sp.monos[sp.sel[bi]], Rat(1));
      int col = sp.glob[bi];
      for (int i = 0; i < g.rank; ++i) { // Cartan: diagonal
        V.action[g.h_index(i)][col][col] = Rat(mu[i]);
      }
      for (int r = 0; r < g.npos(); ++r) {
        Weight rw = g.weight_of_root(r + 1);
        Weight up = mu, dn = mu;
        for (int j = 0; j < g.rank; ++j) {
          up[j] += rw[j];
          dn[j] -= rw[j];
        }
        VermaVec ev = ops.apply_e_vec(r, v);
        project(up, ev, coords);
        for (auto& [row, c] : coords) V.action[g.e_index(r)][row][col] = c;
        VermaVec fv = ops.apply_f_vec(r, v);
        project(dn, fv, coords);
        for (auto& [row, c] : coords) V.action[g.f_index(r)][row][col] = c;
      }
    }
  }

  V.cform = mat_zero<Rat>(total, total);
  for (const auto& [mu, sp] : spaces)
    for (size_t i = 0; i < sp.sel.size(); ++i)
      for (size_t j = 0; j < sp.sel.size(); ++j)
        V.cform[sp.glob[i]][sp.glob[j]] = sp.gram[sp.sel[i]][sp.sel[j]];
  return V;
}

Mat<Rat> Irrep::act(const SparseVec<Rat>& x) const {
  Mat<Rat> out = mat_zero<Rat>(dim, dim);
  for (const auto& [b, c] : x)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (action[b][i][j] != 0) out[i][j] += c * action[b][i][j];
  return out;
}

Mat<Cyc> Irrep::act_cyc(const SparseVec<Cyc>& x) const {
  Mat<Cyc> out = mat_zero<Cyc>(dim, dim);
  for (const auto& [b, c] : x)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (action[b][i][j] != 0) out[i][j] += c * Cyc(action[b][i][j]);
  return out;
}

int Irrep::mult(const Weight& mu) const {
  int n = 0;
  for (const auto& w : wt)
    if (w == mu) ++n;
  return n;
}

Weight highest_weight_label(const LieAlgebra& g, const std::vector<Mat<Cyc>>& action) {
  int n = action.empty() ? 0 : (int)action[0].size();
  // stack all positive-root operators; kernel = highest-weight lines
  Mat<Cyc> stack;
  for (int r = 0; r < g.npos(); ++r)
    for (int i = 0; i < n; ++i) stack.push_back(action[g.e_index(r)][i]);
  auto ker = kernel_basis(stack);
  if (ker.empty()) throw std::logic_error("no highest-weight vector found");
  const auto& v = ker.front();
  int piv = -1;
  for (int i = 0; i < n; ++i)
    if (!v[i].is_zero()) { piv = i; break; }
  Weight w(g.rank, 0);
  for (int i = 0; i < g.rank; ++i) {
    Cyc num;
    for (int j = 0; j < n; ++j) num += action[g.h_index(i)][piv][j] * v[j];
    Cyc ev = num / v[piv];
    if (!ev.is_rational() || ev.rat().get_den() != 1)
      throw std::logic_error("highest weight not integral");
    w[i] = ev.rat().get_num().get_si();
  }
  if (!g.dominant(w)) throw std::logic_error("highest weight not dominant");
  return w;
}

Weight dual_weight(const LieAlgebra& g, const Weight& w) {
  Irrep V = build_irrep(g, w);
  std::vector<Mat<Cyc>> dual(g.dim(), mat_zero<Cyc>(V.dim, V.dim));
  for (int b = 0; b < g.dim(); ++b)
    for (int i = 0; i < V.dim; ++i)
      for (int j = 0; j < V.dim; ++j) dual[b][i][j] = Cyc(-V.action[b][j][i]);
  return highest_weight_label(g, dual);
}

} // namespace twistcb
