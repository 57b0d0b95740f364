#include "twistcb/gamma.hpp"

#include <stdexcept>

namespace twistcb {

std::vector<Mat<Rat>> typeA_matrix_model(const LieAlgebra& g) {
  if (g.type[0] != 'A') throw std::invalid_argument("matrix model needs type A");
  int n = g.rank, sz = n + 1;
  auto unit = [sz](int i, int j) {
    Mat<Rat> m = mat_zero<Rat>(sz, sz);
    m[i][j] = 1;
    return m;
  };
  std::vector<Mat<Rat>> phi(g.dim());
  for (int i = 0; i < n; ++i) {
    phi[g.h_index(i)] = mat_sub(unit(i, i), unit(i + 1, i + 1));
  }
  // simple roots are the first n in height order
  for (int r = 0; r < g.npos(); ++r) {
    const auto& c = g.pos_roots[r];
    int ht = 0, simple = -1;
    for (int i = 0; i < n; ++i) {
      ht += c[i];
      if (c[i] == 1) simple = i;
    }
    if (ht == 1) {
      phi[g.e_index(r)] = unit(simple, simple + 1);
      phi[g.f_index(r)] = unit(simple + 1, simple);
    }
  }
  // extend by height: e_gamma = [e_i, e_{gamma-alpha_i}] / N
  std::vector<int> sidx(n); // signed positive-root index of alpha_i
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    sidx[i] = g.root_lookup(e);
  }
  for (int r = 0; r < g.npos(); ++r) {
    if (g.root_height(r + 1) == 1) continue;
    auto c = g.pos_roots[r];
    for (int i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      std::vector<int> rest = c;
      rest[i] -= 1;
      int sr = g.root_lookup(rest);
      if (sr <= 0) continue;
      int si = sidx[i];
      auto comm = [](const Mat<Rat>& a, const Mat<Rat>& b) {
        return mat_sub(mat_mul(a, b), mat_mul(b, a));
      };
      Rat inv_up = Rat(1) / g.N(si, sr);
      phi[g.e_index(r)] = mat_scale(comm(phi[g.e_index(si - 1)], phi[g.e_index(sr - 1)]), inv_up);
      Rat inv_dn = Rat(1) / g.N(-si, -sr);
      phi[g.f_index(r)] = mat_scale(comm(phi[g.f_index(si - 1)], phi[g.f_index(sr - 1)]), inv_dn);
      break;
    }
  }
  return phi;
}

namespace {

// expand a traceless (n+1)x(n+1) matrix over Cyc in the Chevalley basis
SparseVec<Cyc> expand_typeA(const LieAlgebra& g, const std::vector<Mat<Rat>>& phi,
                            const Mat<Cyc>& m) {
  int sz = g.rank + 1, D = g.dim();
  Mat<Cyc> sys = mat_zero<Cyc>(sz * sz, D);
  std::vector<Cyc> rhs(sz * sz);
  for (int b = 0; b < D; ++b)
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j) sys[i * sz + j][b] = Cyc(phi[b][i][j]);
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) rhs[i * sz + j] = m[i][j];
  auto x = solve(sys, rhs);
  SparseVec<Cyc> out;
  for (int b = 0; b < D; ++b)
    if (!x[b].is_zero()) out[b] = x[b];
  return out;
}

Mat<Cyc> cyc_inverse2(const Mat<Cyc>& m) { return mat_inverse(m); }

} // namespace

GammaAction GammaAction::trivial(const LieAlgebra& g, int p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  GammaAction a{&g, p, mat_id<Cyc>(g.dim())};
  return a;
}

GammaAction GammaAction::from_matrix(const LieAlgebra& g, int p, Mat<Cyc> m) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  GammaAction a{&g, p, std::move(m)};
  a.validate();
  return a;
}

GammaAction GammaAction::inner_typeA(const LieAlgebra& g, int p, const Mat<Cyc>& c) {
  auto phi = typeA_matrix_model(g);
  Mat<Cyc> cinv = cyc_inverse2(c);
  int D = g.dim(), sz = g.rank + 1;
  Mat<Cyc> M = mat_zero<Cyc>(D, D);
  for (int b = 0; b < D; ++b) {
    Mat<Cyc> x = mat_zero<Cyc>(sz, sz);
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j) x[i][j] = Cyc(phi[b][i][j]);
    Mat<Cyc> img = mat_mul(mat_mul(c, x), cinv);
    auto coords = expand_typeA(g, phi, img);
    for (auto& [row, v] : coords) M[row][b] = v;
  }
  return from_matrix(g, p, std::move(M));
}

GammaAction GammaAction::outer_typeA(const LieAlgebra& g) {
  auto phi = typeA_matrix_model(g);
  int D = g.dim(), sz = g.rank + 1;
  Mat<Cyc> M = mat_zero<Cyc>(D, D);
  for (int b = 0; b < D; ++b) {
    Mat<Cyc> x = mat_zero<Cyc>(sz, sz);
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j) x[i][j] = Cyc(-phi[b][j][i]); // -X^t
    auto coords = expand_typeA(g, phi, x);
    for (auto& [row, v] : coords) M[row][b] = v;
  }
  return from_matrix(g, 2, std::move(M));
}

void GammaAction::validate() const {
  const LieAlgebra& g = *alg;
  int D = g.dim();
  if ((int)M.size() != D) throw std::invalid_argument("gamma: wrong matrix size");
  if (power(p) != mat_id<Cyc>(D)) throw std::invalid_argument("gamma: order does not divide p");
  auto col = [&](int b) {
    SparseVec<Cyc> v;
    for (int i = 0; i < D; ++i)
      if (!M[i][b].is_zero()) v[i] = M[i][b];
    return v;
  };
  std::vector<SparseVec<Cyc>> cols(D);
  for (int b = 0; b < D; ++b) cols[b] = col(b);
  for (int a = 0; a < D; ++a)
    for (int b = a + 1; b < D; ++b) {
      // M[x,y] = [Mx,My]
      SparseVec<Cyc> lhs;
      for (const auto& [m, v] : g.bracket(a, b)) {
        Cyc cv(v);
        for (const auto& [i, w] : cols[m]) {
          auto it = lhs.find(i);
          if (it == lhs.end())
            lhs.emplace(i, cv * w);
          else
            it->second += cv * w;
        }
      }
      SparseVec<Cyc> rhs = g.bracket_vec(cols[a], cols[b]);
      for (const auto& [i, w] : rhs) {
        auto it = lhs.find(i);
        Cyc diff = (it == lhs.end() ? Cyc() : it->second) - w;
        if (!diff.is_zero()) throw std::invalid_argument("gamma: not an automorphism");
      }
      for (const auto& [i, w] : lhs) {
        if (rhs.find(i) == rhs.end() && !w.is_zero())
          throw std::invalid_argument("gamma: not an automorphism");
      }
      // form preservation
      if (g.form_pair(cols[a], cols[b]) != Cyc(g.form[a][b]))
        throw std::invalid_argument("gamma: form not preserved");
    }
  for (int a = 0; a < D; ++a)
    if (g.form_pair(cols[a], cols[a]) != Cyc(g.form[a][a]))
      throw std::invalid_argument("gamma: form not preserved");
}

SparseVec<Cyc> GammaAction::apply(const SparseVec<Cyc>& x) const {
  SparseVec<Cyc> out;
  for (const auto& [b, c] : x)
    for (int i = 0; i < (int)M.size(); ++i) {
      if (M[i][b].is_zero()) continue;
      auto it = out.find(i);
      if (it == out.end())
        out.emplace(i, c * M[i][b]);
      else
        it->second += c * M[i][b];
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

Mat<Cyc> GammaAction::power(int k) const {
  Mat<Cyc> r = mat_id<Cyc>(M.size());
  for (int i = 0; i < k; ++i) r = mat_mul(r, M);
  return r;
}

std::vector<std::vector<std::vector<Cyc>>> GammaAction::eigenspaces() const {
  int D = alg->dim();
  std::vector<std::vector<std::vector<Cyc>>> out(p);
  int total = 0;
  for (int i = 0; i < p; ++i) {
    Cyc z = Cyc::zeta_pow(p, i);
    Mat<Cyc> m = M;
    for (int j = 0; j < D; ++j) m[j][j] -= z;
    out[i] = kernel_basis(m);
    total += (int)out[i].size();
  }
  if (total != D) throw std::logic_error("eigenspace dims do not sum to dim g");
  return out;
}

Weight gamma_on_weight(const GammaAction& rho, const Weight& lambda) {
  const LieAlgebra& g = *rho.alg;
  Irrep V = build_irrep(g, lambda);
  Mat<Cyc> ginv = rho.power(rho.p - 1);
  std::vector<Mat<Cyc>> twisted(g.dim());
  for (int b = 0; b < g.dim(); ++b) {
    SparseVec<Cyc> img;
    for (int i = 0; i < g.dim(); ++i)
      if (!ginv[i][b].is_zero()) img[i] = ginv[i][b];
    twisted[b] = V.act_cyc(img);
  }
  return highest_weight_label(g, twisted);
}

} // namespace twistcb
