#include "twistcb/heis.hpp"

#include <algorithm>

namespace twistcb {

namespace {

void enum_parts(int d, int lo, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = lo; k <= d; ++k) {
    cur.push_back(k);
    enum_parts(d - k, k, cur, out);
    cur.pop_back();
  }
}

void hadd(HVec& out, const std::vector<int>& w, const Rat& c) {
  auto it = out.find(w);
  if (it == out.end()) {
    if (c != 0) out.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

} // namespace

HeisModule heis_module(const Rat& hbar, const Rat& mu, int depth) {
  HeisModule m;
  m.hbar = hbar;
  m.mu = mu;
  m.depth = depth;
  m.words.resize(depth + 1);
  m.index.resize(depth + 1);
  for (int d = 0; d <= depth; ++d) {
    std::vector<int> cur;
    enum_parts(d, 1, cur, m.words[d]);
    for (int i = 0; i < (int)m.words[d].size(); ++i) m.index[d][m.words[d][i]] = i;
  }
  return m;
}

HVec heis_apply(const HeisModule& m, int n, const HVec& v) {
  HVec out;
  for (const auto& [w, c] : v) {
    if (n == 0) {
      hadd(out, w, c * m.mu);
    } else if (n < 0) {
      std::vector<int> nw = w;
      nw.insert(std::upper_bound(nw.begin(), nw.end(), -n), -n);
      hadd(out, nw, c);
    } else {
      // abelian modes: a_n hits the vacuum unless it pairs off centrally
      long mult = std::count(w.begin(), w.end(), n);
      if (mult) {
        std::vector<int> nw = w;
        nw.erase(std::find(nw.begin(), nw.end(), n));
        hadd(out, nw, c * Rat(mult) * Rat(n) * m.hbar);
      }
    }
  }
  return out;
}

Mat<Rat> heis_casimir(const HeisModule& m, int k, int d) {
  int dt = d - k;
  if (d < 0 || d > m.depth || dt < 0 || dt > m.depth) return {};
  int nc = (int)m.words[d].size(), nr = (int)m.words[dt].size();
  Mat<Rat> out = mat_zero<Rat>(nr, nc);
  for (int j = 0; j < nc; ++j) {
    HVec v;
    v[m.words[d][j]] = 1;
    HVec acc;
    for (int mm = k - d; mm <= d; ++mm) {
      int n = k - mm;
      // : : puts the smaller exponent left, i.e. the larger acts first
      // at n = mm the symmetrization is trivial: the factors commute
      HVec t = n <= mm ? heis_apply(m, n, heis_apply(m, mm, v))
                       : heis_apply(m, mm, heis_apply(m, n, v));
      for (auto& [key, c] : t) hadd(acc, key, c);
    }
    for (auto& [key, c] : acc) out[m.index[dt].at(key)][j] += c / 2;
  }
  return out;
}

bool heis_virasoro_check(const HeisModule& m, int k, int l) {
  for (int d = 0; d <= m.depth; ++d) {
    int dl = d - l, dk = d - k, dkl = d - k - l;
    if (dl < 0 || dl > m.depth || dk < 0 || dk > m.depth || dkl < 0 ||
        dkl > m.depth)
      continue;
    auto lhs = mat_sub(mat_mul(heis_casimir(m, k, dl), heis_casimir(m, l, d)),
                       mat_mul(heis_casimir(m, l, dk), heis_casimir(m, k, d)));
    Rat mh = Rat(0) - m.hbar * Rat(l - k);
    auto rhs = mat_scale(heis_casimir(m, k + l, d), mh);
    if (k + l == 0) {
      Rat cterm = Rat((long)k * k * k - k) / 12 * m.hbar * m.hbar;
      for (int i = 0; i < (int)rhs.size(); ++i) rhs[i][i] += cterm;
    }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

} // namespace twistcb
