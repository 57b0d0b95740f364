#include "twistcb/sugawara.hpp"

#include <sstream>
#include <stdexcept>

namespace twistcb {

CasimirTensor casimir(const LieAlgebra& g) {
  CasimirTensor cas;
  // Cartan block: dual basis through the inverse of the restricted form
  Mat<Rat> b = mat_zero<Rat>(g.rank, g.rank);
  for (int i = 0; i < g.rank; ++i)
    for (int j = 0; j < g.rank; ++j) b[i][j] = g.form[i][j];
  Mat<Rat> binv = mat_inverse(b);
  for (int i = 0; i < g.rank; ++i) {
    SparseVec<Rat> x, y;
    x[i] = 1;
    for (int j = 0; j < g.rank; ++j)
      if (binv[j][i] != 0) y[j] = binv[j][i];
    cas.pairs.push_back({x, y});
  }
  // root vectors pair across the sign flip
  for (int r = 0; r < 2 * g.npos(); ++r) {
    int e = g.e_index(r);
    int f = r < g.npos() ? g.e_index(r + g.npos()) : g.e_index(r - g.npos());
    Rat fv = g.form[e][f];
    if (fv == 0) throw std::logic_error("casimir: degenerate form");
    SparseVec<Rat> x, y;
    x[e] = 1;
    y[f] = Rat(1) / fv;
    cas.pairs.push_back({x, y});
  }
  // read 2 hcheck from sum [X_i,[Y_i, z]] on basis elements
  Mat<Rat> m = mat_zero<Rat>(g.dim(), g.dim());
  for (int z = 0; z < g.dim(); ++z) {
    SparseVec<Rat> zz;
    zz[z] = 1;
    for (auto& [x, y] : cas.pairs) {
      auto w = g.bracket_vec(x, g.bracket_vec(y, zz));
      for (auto& [i, v] : w) m[i][z] += v;
    }
  }
  cas.hcheck = m[0][0] / 2;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      if (m[i][j] != (i == j ? 2 * cas.hcheck : Rat(0)))
        throw std::logic_error("casimir: sum ad X_i ad Y_i not scalar");
  return cas;
}

Mat<Rat> casimir_matrix(const CasimirTensor& cas, const Irrep& v) {
  Mat<Rat> out = mat_zero<Rat>(v.dim, v.dim);
  for (auto& [x, y] : cas.pairs) {
    auto m = mat_mul(v.act(x), v.act(y));
    for (int i = 0; i < v.dim; ++i)
      for (int j = 0; j < v.dim; ++j) out[i][j] += m[i][j];
  }
  return out;
}

namespace {

MVec apply_comb(const GradedModule& m, int n, const SparseVec<Rat>& x, const MVec& v) {
  MVec out;
  for (const auto& [b, c] : x) out = mvec_axpy(std::move(out), c, loop_apply(m, n, b, v));
  return out;
}

} // namespace

Virasoro sugawara_operator(const GradedModule& m, const CasimirTensor& cas, int k) {
  Virasoro vir;
  vir.k = k;
  vir.op.resize(m.depth + 1);
  Rat denom = Rat(m.level) + cas.hcheck;
  if (denom == 0) throw std::domain_error("sugawara: level + hcheck = 0");
  Rat scale = Rat(-1) / (2 * denom);
  for (int d = 0; d <= m.depth; ++d) {
    int dt = d - k;
    if (dt < 0 || dt > m.depth) continue;
    vir.op[d] = mat_zero<Rat>(m.dim(dt), m.dim(d));
    for (int j = 0; j < m.dim(d); ++j) {
      MVec v;
      v[m.word_at(d, j)] = 1;
      MVec acc;
      // the larger exponent acts first; exponents above d annihilate, so the
      // mode sum is exactly m in [k-d, d]
      for (auto& [x, y] : cas.pairs)
        for (int mm = k - d; mm <= d; ++mm) {
          int n = k - mm;
          if (n < mm)
            acc = mvec_axpy(std::move(acc), Rat(1),
                            apply_comb(m, n, x, apply_comb(m, mm, y, v)));
          else if (n > mm)
            acc = mvec_axpy(std::move(acc), Rat(1),
                            apply_comb(m, mm, y, apply_comb(m, n, x, v)));
          else {
            Rat half(1, 2);
            acc = mvec_axpy(std::move(acc), half,
                            apply_comb(m, n, x, apply_comb(m, mm, y, v)));
            acc = mvec_axpy(std::move(acc), half,
                            apply_comb(m, mm, y, apply_comb(m, n, x, v)));
          }
        }
      auto col = m.coords(dt, acc);
      for (int i = 0; i < m.dim(dt); ++i) vir.op[d][i][j] = col[i] * scale;
    }
  }
  return vir;
}

VirReport virasoro_check(const GradedModule& m, const CasimirTensor& cas, int k, int l) {
  VirReport rep;
  const LieAlgebra& g = *m.alg;
  auto tk = sugawara_operator(m, cas, k);
  auto tl = sugawara_operator(m, cas, l);
  auto tkl = sugawara_operator(m, cas, k + l);
  auto fail = [&rep](const std::string& s) {
    rep.ok = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += s;
  };
  // (i) [T(D_k), X t^n] = n X t^{n+k}
  for (int n = -2; n <= 2; ++n)
    for (int b = 0; b < g.dim(); ++b)
      for (int d = 0; d <= m.depth; ++d) {
        int d1 = d - n, d2 = d1 - k, d3 = d - k;
        if (d1 < 0 || d1 > m.depth || d2 < 0 || d2 > m.depth || d3 < 0 ||
            d3 > m.depth)
          continue;
        auto lhs = mat_sub(mat_mul(tk.op[d1], mode_matrix(m, n, b, d)),
                           mat_mul(mode_matrix(m, n, b, d3), tk.op[d]));
        auto rhs = mat_scale(mode_matrix(m, n + k, b, d), Rat(n));
        if (!(lhs == rhs)) {
          std::ostringstream os;
          os << "derivation identity fails at k=" << k << " n=" << n
             << " basis=" << b << " degree=" << d;
          fail(os.str());
        }
      }
  // (ii) [T(D_k), T(D_l)] = (l-k) T(D_{k+l}) + c0 (k^3-k)/12 delta_{k,-l}
  Rat c0 = Rat(m.level) * Rat(g.dim()) / (Rat(m.level) + cas.hcheck);
  for (int d = 0; d <= m.depth; ++d) {
    int dl = d - l, dk = d - k, dkl = d - k - l;
    if (dl < 0 || dl > m.depth || dk < 0 || dk > m.depth || dkl < 0 ||
        dkl > m.depth)
      continue;
    auto lhs = mat_sub(mat_mul(tk.op[dl], tl.op[d]), mat_mul(tl.op[dk], tk.op[d]));
    auto rhs = mat_scale(tkl.op[d], Rat(l - k));
    if (k + l == 0) {
      Rat cterm = c0 * Rat((long)k * k * k - k) / 12;
      for (int i = 0; i < (int)rhs.size(); ++i) rhs[i][i] += cterm;
    }
    if (!(lhs == rhs)) {
      std::ostringstream os;
      os << "virasoro bracket fails at k=" << k << " l=" << l << " degree=" << d;
      fail(os.str());
    }
  }
  return rep;
}

} // namespace twistcb
