#ifndef TWISTCB_LINALG_HPP
#define TWISTCB_LINALG_HPP

#include <map>
#include <stdexcept>
#include <vector>

namespace twistcb {

/* Exact linear algebra over a field K (K = Rat or Cyc).  K needs default-ctor
 * zero, +,-,*,/ and ==. */

template <class K>
using SparseVec = std::map<int, K>; // index -> nonzero coefficient

template <class K>
void sv_axpy(SparseVec<K>& y, const K& a, const SparseVec<K>& x) {
  if (a == K()) return;
  for (const auto& [i, v] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      K w = a * v;
      if (!(w == K())) y.emplace(i, std::move(w));
    } else {
      it->second += a * v;
      if (it->second == K()) y.erase(it);
    }
  }
}

/* Incremental row space with unit pivots; the workhorse for rank counts,
 * dependence detection and residual reduction. */
template <class K>
class SpanBuilder {
public:
  // residual of v modulo the current span
  SparseVec<K> reduce(SparseVec<K> v) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [i, c] : v) {
        auto r = rows_.find(i);
        if (r != rows_.end()) {
          K cc = K() - c;
          sv_axpy(v, cc, r->second); // unit pivot: kills entry i
          changed = true;
          break;
        }
      }
    }
    return v;
  }

  // returns true when v was independent (rank grew)
  bool add(SparseVec<K> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    auto piv = v.begin();
    K d = piv->second;
    SparseVec<K> row;
    for (auto& [i, c] : v) row.emplace(i, c / d);
    int p = piv->first;
    // keep existing rows reduced against the new pivot
    for (auto& [q, r] : rows_) {
      auto it = r.find(p);
      if (it != r.end()) {
        K c = K() - it->second;
        sv_axpy(r, c, row);
      }
    }
    rows_.emplace(p, std::move(row));
    return true;
  }

  int rank() const { return (int)rows_.size(); }
  const std::map<int, SparseVec<K>>& rows() const { return rows_; }

private:
  std::map<int, SparseVec<K>> rows_; // pivot index -> row with unit pivot
};

template <class K>
using Mat = std::vector<std::vector<K>>;

template <class K>
Mat<K> mat_zero(int r, int c) {
  return Mat<K>(r, std::vector<K>(c, K()));
}

template <class K>
Mat<K> mat_id(int n) {
  Mat<K> m = mat_zero<K>(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = K(1);
  return m;
}

template <class K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
  int r = a.size(), m = b.size(), c = m ? b[0].size() : 0;
  Mat<K> out = mat_zero<K>(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < m; ++k) {
      if (a[i][k] == K()) continue;
      for (int j = 0; j < c; ++j) {
        if (b[k][j] == K()) continue;
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  return out;
}

template <class K>
Mat<K> mat_sub(Mat<K> a, const Mat<K>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

template <class K>
Mat<K> mat_scale(Mat<K> a, const K& s) {
  for (auto& row : a)
    for (auto& x : row) x = x * s;
  return a;
}

template <class K>
bool mat_is_zero(const Mat<K>& a) {
  for (auto& row : a)
    for (auto& x : row)
      if (!(x == K())) return false;
  return true;
}

// in-place reduced row echelon; returns pivot columns
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int rows = m.size(), cols = rows ? m[0].size() : 0, row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (!(m[r][col] == K())) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[row]);
    K d = m[row][col];
    for (int j = col; j < cols; ++j) m[row][j] = m[row][j] / d;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == K()) continue;
      K f = m[r][col];
      for (int j = col; j < cols; ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int mat_rank(Mat<K> m) {
  return (int)rref(m).size();
}

// basis of the right kernel, as column vectors
template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> m) {
  int cols = m.empty() ? 0 : (int)m[0].size();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : pivots) is_piv[c] = true;
  std::vector<std::vector<K>> out;
  for (int free = 0; free < cols; ++free) {
    if (is_piv[free]) continue;
    std::vector<K> v(cols, K());
    v[free] = K(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = K() - m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

// solve A x = b; throws when inconsistent or underdetermined
template <class K>
std::vector<K> solve(Mat<K> a, const std::vector<K>& b) {
  int rows = a.size(), cols = rows ? a[0].size() : 0;
  for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(a);
  if (!pivots.empty() && pivots.back() == cols)
    throw std::domain_error("solve: inconsistent system");
  if ((int)pivots.size() != cols)
    throw std::domain_error("solve: underdetermined system");
  std::vector<K> x(cols, K());
  for (int r = 0; r < cols; ++r) x[pivots[r]] = a[r][cols];
  return x;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& a) {
  int n = a.size();
  Mat<K> m = a;
  for (int i = 0; i < n; ++i) {
    std::vector<K> e(n, K());
    e[i] = K(1);
    for (int j = 0; j < n; ++j) m[j].push_back(e[j]);
  }
  std::vector<int> pivots = rref(m);
  if ((int)pivots.size() != n || pivots.back() != n - 1)
    throw std::domain_error("mat_inverse: singular matrix");
  Mat<K> out = mat_zero<K>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

} // namespace twistcb

#endif
