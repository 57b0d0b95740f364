#include "twistcb/liealg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace twistcb {

namespace {

std::vector<std::vector<int>> cartan_matrix(char letter, int n) {
  auto chain = [](int m) {
    std::vector<std::vector<int>> a(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i) {
      a[i][i] = 2;
      if (i + 1 < m) a[i][i + 1] = a[i + 1][i] = -1;
    }
    return a;
  };
  switch (letter) {
    case 'A':
      return chain(n);
    case 'B': { // alpha_n short
      if (n < 2) throw std::invalid_argument("B needs rank >= 2");
      auto a = chain(n);
      a[n - 1][n - 2] = -2;
      return a;
    }
    case 'C': { // alpha_n long
      if (n < 2) throw std::invalid_argument("C needs rank >= 2");
      auto a = chain(n);
      a[n - 2][n - 1] = -2;
      return a;
    }
    case 'D': {
      if (n < 3) throw std::invalid_argument("D needs rank >= 3");
      auto a = chain(n - 1);
      a.resize(n);
      for (auto& row : a) row.resize(n, 0);
      a[n - 1][n - 1] = 2;
      a[n - 1][n - 3] = a[n - 3][n - 1] = -1;
      return a;
    }
    case 'E': {
      if (n < 6 || n > 8) throw std::invalid_argument("E rank in 6..8");
      // Bourbaki: chain 1-3-4-5-...-n with node 2 attached to 4
      std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int v = 4; v < n; ++v) link(v, v + 1);
      return a;
    }
    case 'F': {
      if (n != 4) throw std::invalid_argument("F rank must be 4");
      auto a = chain(4);
      a[2][1] = -2; // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      return a;
    }
    case 'G': {
      if (n != 2) throw std::invalid_argument("G rank must be 2");
      return {{2, -3}, {-1, 2}}; // alpha_1 short
    }
    default:
      throw std::invalid_argument("unknown Cartan letter");
  }
}

} // namespace

LieAlgebra LieAlgebra::build(const std::string& type) {
  if (type.size() < 2) throw std::invalid_argument("type like A1, G2 expected");
  char letter = type[0];
  int n = std::stoi(type.substr(1));
  if (n < 1 || n > 8) throw std::invalid_argument("rank out of range");
  LieAlgebra g;
  g.type = type;
  g.rank = n;
  g.cartan = cartan_matrix(letter, n);
  // symmetrizers: d_i * a_ij = d_j * a_ji, normalized to min 1
  g.d.assign(n, Rat(0));
  g.d[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (g.cartan[i][j] == 0 || g.d[i] == 0 || g.d[j] != 0) continue;
        g.d[j] = g.d[i] * g.cartan[i][j] / g.cartan[j][i];
        changed = true;
      }
  }
  Rat dmin = g.d[0];
  for (const Rat& x : g.d)
    if (x < dmin) dmin = x;
  for (Rat& x : g.d) x /= dmin;
  g.generate_roots();
  g.compute_constants();
  g.compute_brackets();
  g.compute_forms();
  g.verify_structure();
  return g;
}

void LieAlgebra::generate_roots() {
  std::map<std::vector<int>, bool> seen;
  std::vector<std::vector<int>> roots;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    roots.push_back(e);
    seen[e] = true;
  }
  for (size_t head = 0; head < roots.size(); ++head) {
    std::vector<int> beta = roots[head];
    for (int i = 0; i < rank; ++i) {
      // down-string length p, then beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0
      int p = 0;
      std::vector<int> down = beta;
      for (;;) {
        down[i] -= 1;
        bool zero = std::all_of(down.begin(), down.end(), [](int x) { return x == 0; });
        if (zero || !seen.count(down)) break;
        ++p;
      }
      long pair = 0;
      for (int j = 0; j < rank; ++j) pair += (long)beta[j] * cartan[i][j];
      if (p - pair > 0) {
        std::vector<int> up = beta;
        up[i] += 1;
        if (!seen.count(up)) {
          seen[up] = true;
          roots.push_back(up);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  pos_roots = roots;
  for (int r = 0; r < (int)roots.size(); ++r) root_map_[roots[r]] = r;
  theta = (int)roots.size() - 1; // unique maximal height
}

std::vector<int> LieAlgebra::root_coords(int sr) const {
  int r = std::abs(sr) - 1;
  std::vector<int> c = pos_roots.at(r);
  if (sr < 0)
    for (int& x : c) x = -x;
  return c;
}

int LieAlgebra::root_lookup(const std::vector<int>& coords) const {
  auto it = root_map_.find(coords);
  if (it != root_map_.end()) return it->second + 1;
  std::vector<int> neg = coords;
  for (int& x : neg) x = -x;
  it = root_map_.find(neg);
  if (it != root_map_.end()) return -(it->second + 1);
  return 0;
}

int LieAlgebra::root_height(int sr) const {
  auto c = root_coords(sr);
  return std::accumulate(c.begin(), c.end(), 0);
}

Rat LieAlgebra::root_norm2(int sr) const {
  auto a = root_coords(sr);
  Rat s = 0;
  for (int i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank; ++j) {
      if (a[j] == 0) continue;
      s += Rat(a[i]) * Rat(a[j]) * d[i] * cartan[i][j]; // (alpha_i,alpha_j) = d_i a_ij
    }
  }
  return s;
}

std::vector<long> LieAlgebra::coroot(int sr) const {
  auto a = root_coords(sr);
  Rat na = root_norm2(sr);
  std::vector<long> c(rank);
  for (int i = 0; i < rank; ++i) {
    Rat ci = Rat(a[i]) * d[i] * 2 / na; // a_i (alpha_i,alpha_i)/(alpha,alpha)
    if (ci.get_den() != 1) throw std::logic_error("coroot not integral");
    c[i] = ci.get_num().get_si();
  }
  return c;
}

void LieAlgebra::compute_constants() {
  // by increasing height of the sum, extraspecial pair first
  for (int g = 0; g < npos(); ++g) {
    const auto& gamma = pos_roots[g];
    std::vector<std::pair<int, int>> special;
    for (int a = 0; a < npos(); ++a) {
      for (int b = a + 1; b < npos(); ++b) {
        std::vector<int> s(rank);
        for (int i = 0; i < rank; ++i) s[i] = pos_roots[a][i] + pos_roots[b][i];
        if (s == gamma) special.emplace_back(a, b);
      }
    }
    if (special.empty()) continue;
    std::sort(special.begin(), special.end());
    auto [eps, eta] = special.front();
    // extraspecial: N = p+1 where p = down-string length of eta along eps
    {
      int p = 0;
      std::vector<int> down = pos_roots[eta];
      for (;;) {
        for (int i = 0; i < rank; ++i) down[i] -= pos_roots[eps][i];
        if (root_lookup(down) == 0) break;
        ++p;
      }
      ntab_[{eps, eta}] = Rat(p + 1);
    }
    for (size_t k = 1; k < special.size(); ++k) {
      // 4-root Jacobi relation against the extraspecial pair
      auto [al, be] = special[k];
      int sa = al + 1, sb = be + 1, se = eps + 1, sg = g + 1;
      Rat num = 0;
      if (int m = root_lookup_sum(se, -sa))
        num += n_general(se, -sa) * n_general(m, -sb);
      if (int m = root_lookup_sum(se, -sb))
        num += n_general(-sb, se) * n_general(m, -sa);
      Rat den = n_general(-sg, se);
      ntab_[{al, be}] = num / den;
    }
  }
}

// signed-index sum helper; 0 when not a root (callers guard via n_general's 0)
int LieAlgebra::root_lookup_sum(int sa, int sb) const {
  auto a = root_coords(sa), b = root_coords(sb);
  for (int i = 0; i < rank; ++i) a[i] += b[i];
  return root_lookup(a);
}

Rat LieAlgebra::n_general(int sa, int sb) const {
  int ssum = root_lookup_sum(sa, sb);
  if (ssum == 0) return Rat(0);
  if (sa > 0 && sb > 0) {
    int a = sa - 1, b = sb - 1;
    if (a < b) return ntab_.at({a, b});
    return -ntab_.at({b, a});
  }
  if (sa < 0 && sb < 0) return -n_general(-sa, -sb);
  int sc = -ssum; // a + b + c = 0
  if ((sa > 0) == (sc > 0)) // N(a,b) = N(c,a) (c,c)/(b,b)
    return n_general(sc, sa) * root_norm2(sc) / root_norm2(sb);
  return n_general(sb, sc) * root_norm2(sc) / root_norm2(sa);
}

Rat LieAlgebra::N(int sa, int sb) const { return n_general(sa, sb); }

void LieAlgebra::compute_brackets() {
  int D = dim();
  btab_.assign(D, std::vector<SparseVec<Rat>>(D));
  auto sr_of = [this](int idx) { // basis index -> signed root, 0 for Cartan
    if (idx < rank) return 0;
    int r = idx - rank;
    return r < npos() ? r + 1 : -(r - npos() + 1);
  };
  auto basis_of_sr = [this](int sr) {
    return sr > 0 ? e_index(sr - 1) : f_index(-sr - 1);
  };
  for (int a = 0; a < D; ++a) {
    for (int b = 0; b < D; ++b) {
      int ra = sr_of(a), rb = sr_of(b);
      SparseVec<Rat>& out = btab_[a][b];
      if (ra == 0 && rb == 0) continue; // Cartan abelian
      if (ra == 0 || rb == 0) {
        int h = ra == 0 ? a : b, sr = ra == 0 ? rb : ra;
        auto c = root_coords(sr);
        long pair = 0;
        for (int j = 0; j < rank; ++j) pair += (long)c[j] * cartan[h][j];
        if (pair != 0) {
          Rat v = Rat(pair);
          if (rb == 0) v = -v; // [e, h] = -[h, e]
          out[basis_of_sr(sr)] = v;
        }
        continue;
      }
      if (ra + rb == 0) {
        // [e_a, e_{-a}] = H_a; coroot(-a) = -coroot(a) handles the sign
        auto c = coroot(ra);
        for (int i = 0; i < rank; ++i)
          if (c[i] != 0) out[h_index(i)] = Rat(c[i]);
        continue;
      }
      int ssum = root_lookup_sum(ra, rb);
      if (ssum != 0) {
        Rat n = n_general(ra, rb);
        if (n != 0) out[basis_of_sr(ssum)] = n;
      }
    }
  }
}

SparseVec<Rat> LieAlgebra::bracket(int a, int b) const { return btab_[a][b]; }

SparseVec<Rat> LieAlgebra::bracket_vec(const SparseVec<Rat>& x, const SparseVec<Rat>& y) const {
  SparseVec<Rat> out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) sv_axpy(out, Rat(ca * cb), btab_[a][b]);
  return out;
}

SparseVec<Cyc> LieAlgebra::bracket_vec(const SparseVec<Cyc>& x, const SparseVec<Cyc>& y) const {
  SparseVec<Cyc> out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      Cyc c = ca * cb;
      for (const auto& [k, v] : btab_[a][b]) {
        auto it = out.find(k);
        Cyc add = c * Cyc(v);
        if (it == out.end()) {
          if (!add.is_zero()) out.emplace(k, add);
        } else {
          it->second += add;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  return out;
}

void LieAlgebra::compute_forms() {
  int D = dim();
  killing = mat_zero<Rat>(D, D);
  for (int a = 0; a < D; ++a)
    for (int b = a; b < D; ++b) {
      Rat tr = 0;
      for (int c = 0; c < D; ++c) {
        // coefficient of c in [a,[b,c]]
        for (const auto& [m, vm] : btab_[b][c]) {
          auto it = btab_[a][m].find(c);
          if (it != btab_[a][m].end()) tr += vm * it->second;
        }
      }
      killing[a][b] = killing[b][a] = tr;
    }
  auto ct = coroot(theta + 1);
  Rat k_tt = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) k_tt += Rat(ct[i]) * Rat(ct[j]) * killing[i][j];
  Rat scale = Rat(2) / k_tt;
  form = mat_scale(killing, scale);
}

Rat LieAlgebra::form_pair(const SparseVec<Rat>& x, const SparseVec<Rat>& y) const {
  Rat s = 0;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) s += ca * cb * form[a][b];
  return s;
}

Cyc LieAlgebra::form_pair(const SparseVec<Cyc>& x, const SparseVec<Cyc>& y) const {
  Cyc s;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) s += ca * cb * Cyc(form[a][b]);
  return s;
}

Weight LieAlgebra::weight_of_root(int sr) const {
  auto c = root_coords(sr);
  Weight w(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) w[i] += (long)c[j] * cartan[i][j];
  return w;
}

long LieAlgebra::pair_coroot(const Weight& w, int sr) const {
  auto c = coroot(sr);
  long s = 0;
  for (int i = 0; i < rank; ++i) s += w[i] * c[i];
  return s;
}

bool LieAlgebra::dominant(const Weight& w) const {
  return std::all_of(w.begin(), w.end(), [](long x) { return x >= 0; });
}

std::vector<Weight> LieAlgebra::enumerate_levels(long ell) const {
  if (ell < 0) throw std::invalid_argument("level must be >= 0");
  auto c = coroot(theta + 1);
  std::vector<Weight> out;
  Weight w(rank, 0);
  std::function<void(int, long)> rec = [&](int i, long used) {
    if (i == rank) {
      out.push_back(w);
      return;
    }
    for (long v = 0; used + v * c[i] <= ell; ++v) {
      w[i] = v;
      rec(i + 1, used + v * c[i]);
    }
    w[i] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Rat LieAlgebra::weyl_dim(const Weight& w) const {
  Rat prod = 1;
  for (int r = 0; r < npos(); ++r) {
    auto c = coroot(r + 1);
    long csum = std::accumulate(c.begin(), c.end(), 0L); // rho(H_alpha)
    long num = pair_coroot(w, r + 1) + csum;             // (lambda+rho)(H_alpha)
    prod *= Rat(num) / Rat(csum);
  }
  return prod;
}

void LieAlgebra::verify_structure() const {
  int D = dim();
  for (int a = 0; a < D; ++a)
    for (int b = a + 1; b < D; ++b) {
      // antisymmetry
      SparseVec<Rat> s = btab_[a][b];
      sv_axpy(s, Rat(1), btab_[b][a]);
      if (!s.empty()) throw std::logic_error("bracket not antisymmetric");
      for (int c = 0; c < D; ++c) {
        SparseVec<Rat> j;
        for (const auto& [m, v] : btab_[a][b]) sv_axpy(j, v, btab_[m][c]);
        for (const auto& [m, v] : btab_[b][c]) sv_axpy(j, v, btab_[m][a]);
        for (const auto& [m, v] : btab_[c][a]) sv_axpy(j, v, btab_[m][b]);
        if (!j.empty()) throw std::logic_error("Jacobi identity failed");
      }
    }
  // invariance of the normalized form
  for (int x = 0; x < D; ++x)
    for (int u = 0; u < D; ++u)
      for (int v = 0; v < D; ++v) {
        Rat s = 0;
        for (const auto& [m, c] : btab_[x][u]) s += c * form[m][v];
        for (const auto& [m, c] : btab_[x][v]) s += c * form[u][m];
        if (s != 0) throw std::logic_error("form not invariant");
      }
}

} // namespace twistcb
