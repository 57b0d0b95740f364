#include "twistcb/cover.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace twistcb {

using nlohmann::json;

CoveringGraph parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("graph json: ") + e.what());
  }
  CoveringGraph g;
  auto need = [&](const char* k) {
    if (!j.contains(k)) throw std::invalid_argument(std::string("graph json: missing field ") + k);
  };
  need("p");
  need("vertices");
  g.p = j.at("p").get<int>();
  for (auto& v : j.at("vertices")) {
    CoveringGraph::Vertex vx;
    vx.genus = v.value("genus", 0);
    g.vertices.push_back(vx);
  }
  for (auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: edge must be [v,v]");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  for (auto& l : j.value("legs", json::array())) {
    CoveringGraph::Leg leg;
    leg.vertex = l.at("vertex").get<int>();
    leg.label = l.at("label").get<std::string>();
    g.legs.push_back(leg);
  }
  for (auto& b : j.value("branch", json::array())) {
    CoveringGraph::Branch br;
    br.vertex = b.contains("edge") ? -1 : b.at("vertex").get<int>();
    br.chr = b.at("char").get<int>();
    g.branch.push_back(br);
  }
  if (j.contains("xi")) {
    g.has_xi = true;
    for (auto& x : j.at("xi")) g.xi.push_back(x.get<int>());
  }
  return g;
}

std::vector<std::string> validate(const CoveringGraph& g) {
  std::vector<std::string> out;
  auto bad = [&out](const std::string& s) { out.push_back(s); };
  if (!is_prime(g.p) || g.p > 7) bad("p must be a prime <= 7");
  int nv = (int)g.vertices.size();
  if (nv == 0) bad("no vertices");
  for (auto& v : g.vertices)
    if (v.genus < 0) bad("negative genus");
  for (auto& [a, b] : g.edges)
    if (a < 0 || a >= nv || b < 0 || b >= nv) bad("edge endpoint out of range");
  std::set<std::string> labels;
  for (auto& l : g.legs) {
    if (l.vertex < 0 || l.vertex >= nv) bad("leg vertex out of range");
    if (l.label.empty() || !labels.insert(l.label).second)
      bad("leg labels must be nonempty and unique");
  }
  for (auto& b : g.branch) {
    if (b.vertex == -1)
      bad("node in branch locus");
    else if (b.vertex < 0 || b.vertex >= nv)
      bad("branch vertex out of range");
    if (b.chr < 1 || b.chr >= g.p) bad("branch character out of range");
  }
  if (g.has_xi) {
    std::multiset<int> a(g.xi.begin(), g.xi.end()), b;
    for (auto& br : g.branch) b.insert(br.chr);
    if (a != b) bad("hurwitz degree mismatch");
  }
  // stability of (X, sigma + R)
  std::vector<int> special(nv, 0);
  for (auto& [a, b] : g.edges) {
    if (a >= 0 && a < nv) special[a]++;
    if (b >= 0 && b < nv) special[b]++;
  }
  for (auto& l : g.legs)
    if (l.vertex >= 0 && l.vertex < nv) special[l.vertex]++;
  for (auto& b : g.branch)
    if (b.vertex >= 0 && b.vertex < nv) special[b.vertex]++;
  for (int v = 0; v < nv; ++v)
    if (2 * g.vertices[v].genus - 2 + special[v] <= 0)
      bad("unstable component " + std::to_string(v));
  return out;
}

int base_genus(const CoveringGraph& g) {
  int s = (int)g.edges.size() - (int)g.vertices.size() + 1;
  for (auto& v : g.vertices) s += v.genus;
  return s;
}

int cover_genus(const CoveringGraph& g) {
  // Riemann-Hurwitz with total ramification at each branch point
  int gb = base_genus(g);
  int num = 2 * g.p * (gb - 1) + 2 + (g.p - 1) * (int)g.branch.size();
  if (num % 2) throw std::domain_error("cover_genus: non-integral genus");
  return num / 2;
}

CoveringGraph normalize(const CoveringGraph& g, int edge) {
  if (edge < 0 || edge >= (int)g.edges.size())
    throw std::out_of_range("normalize: no such node");
  CoveringGraph out = g;
  auto [a, b] = out.edges[edge];
  out.edges.erase(out.edges.begin() + edge);
  std::string tag = std::to_string(edge);
  out.legs.push_back({a, "p+:" + tag});
  out.legs.push_back({b, "p-:" + tag});
  return out;
}

int inv_mod(int a, int p) {
  a = ((a % p) + p) % p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::domain_error("inv_mod: not invertible");
}

void validate_model(const KummerModel& m) {
  if (!is_prime(m.p) || m.p > 7) throw std::invalid_argument("model: bad p");
  int deg = 0;
  for (size_t r = 0; r < m.branch.size(); ++r) {
    auto& [b, e] = m.branch[r];
    if (e < 1 || e >= m.p) throw std::invalid_argument("model: exponent out of range");
    deg += e;
    for (size_t s = r + 1; s < m.branch.size(); ++s)
      if (b == m.branch[s].first)
        throw std::invalid_argument("model: repeated branch point");
  }
  if (deg % m.p) throw std::invalid_argument("model: infinity would be branched");
}

std::vector<int> eigensheaf_stalks(const KummerModel& m, int branch_index) {
  if (branch_index < 0 || branch_index >= (int)m.branch.size())
    throw std::out_of_range("eigensheaf_stalks: not a branch point");
  int mm = m.branch[branch_index].second; // shift i/n = i * m mod p
  std::vector<int> out(m.p);
  for (int i = 0; i < m.p; ++i) out[i] = i * mm % m.p;
  return out;
}

/* ---- polynomial helpers ---- */

namespace {

using Poly = std::vector<Rat>; // low degree first, normalized (no zero tail)

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ptrim(c);
  return c;
}

Rat peval(const Poly& a, const Rat& x) {
  Rat s = 0;
  for (size_t i = a.size(); i-- > 0;) s = s * x + a[i];
  return s;
}

Poly pdiff(const Poly& a) {
  Poly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rat((long)i));
  return d;
}

Poly model_f(const KummerModel& m) {
  Poly f{Rat(1)};
  for (auto& [b, e] : m.branch) {
    Rat nb = Rat(0) - b;
    for (int k = 0; k < e; ++k) f = pmul(f, Poly{nb, Rat(1)});
  }
  return f;
}

} // namespace

bool tangent_twist_check(const KummerModel& m, int deg_bound) {
  // invariant derivations a(x) d/dx + y b(x) d/dy of k[x,y]/(y^p - f):
  // constraint p f b = f' a; check a vanishes at every branch point
  Poly f = model_f(m), fp = pdiff(f);
  int n = deg_bound + 1; // coefficients 0..deg_bound for each of a, b
  int rows = (int)f.size() + deg_bound + 1;
  Mat<Rat> sys = mat_zero<Rat>(rows, 2 * n);
  for (int k = 0; k < n; ++k) {
    for (size_t i = 0; i < f.size(); ++i)
      sys[k + (int)i][n + k] += Rat(m.p) * f[i]; // p f b
    for (size_t i = 0; i < fp.size(); ++i)
      sys[k + (int)i][k] -= fp[i]; // - f' a
  }
  for (auto& v : kernel_basis(sys)) {
    Poly a(v.begin(), v.begin() + n);
    for (auto& [b, e] : m.branch)
      if (peval(a, b) != 0) return false;
  }
  return true;
}

std::optional<Rat> rat_root(const Rat& v, int p) {
  if (v == 0) return Rat(0);
  mpz_class num = v.get_num(), den = v.get_den();
  bool neg = num < 0;
  if (neg) {
    if (p % 2 == 0) return std::nullopt;
    num = -num;
  }
  mpz_class rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), p);
  int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), p);
  if (!exact_n || !exact_d) return std::nullopt;
  Rat r(neg ? -rn : rn, rd);
  r.canonicalize();
  return r;
}

GlobalAlgebra global_algebra(const KummerModel& m, const std::vector<Rat>& punctures,
                             const GammaAction& rho, int bound) {
  validate_model(m);
  if (rho.p != m.p) throw std::invalid_argument("global_algebra: rho has wrong order");
  for (auto& a : punctures)
    for (auto& [b, e] : m.branch)
      if (a == b) throw std::invalid_argument("global_algebra: puncture meets branch locus");
  GlobalAlgebra out;
  out.model = &m;
  out.rho = &rho;
  out.punctures = punctures;
  out.bound = bound;
  int p = m.p, degf = 0;
  for (auto& [b, e] : m.branch) degf += e;
  auto eig = rho.eigenspaces();
  for (int i = 0; i < p; ++i) {
    const auto& vecs = eig[(p - i) % p]; // g^{zeta^-i}
    if (vecs.empty()) continue;
    int beta_sum = 0;
    for (auto& [b, e] : m.branch) beta_sum += i * e / p;
    int deg_max = beta_sum + bound * (int)punctures.size() - i * degf / p;
    for (auto& x : vecs) {
      // literal fixed-point check: rho(gamma) X = zeta^{-i} X
      SparseVec<Cyc> sx;
      for (int k = 0; k < (int)x.size(); ++k)
        if (!x[k].is_zero()) sx[k] = x[k];
      auto im = rho.apply(sx);
      Cyc z = Cyc::zeta_pow(p, (p - i) % p);
      for (auto& [k, v] : im)
        if (!(v - z * (sx.count(k) ? sx.at(k) : Cyc())).is_zero())
          throw std::logic_error("global_algebra: generator not invariant");
      for (int t = 0; t <= deg_max; ++t) {
        GlobalAlgebra::Gen gen;
        gen.i = i;
        gen.eigvec = x;
        gen.num.assign(t + 1, Rat(0));
        gen.num[t] = 1;
        out.gens.push_back(gen);
      }
    }
  }
  return out;
}

bool algebra_closed(const GlobalAlgebra& a) {
  const KummerModel& m = *a.model;
  const LieAlgebra& g = *a.rho->alg;
  int p = m.p, degf = 0;
  for (auto& [b, e] : m.branch) degf += e;
  auto beta = [&](int i) {
    std::vector<int> bs;
    for (auto& [b, e] : m.branch) bs.push_back(i * e / p);
    return bs;
  };
  for (auto& g1 : a.gens)
    for (auto& g2 : a.gens) {
      SparseVec<Cyc> x1, x2;
      for (int k = 0; k < g.dim(); ++k) {
        if (!g1.eigvec[k].is_zero()) x1[k] = g1.eigvec[k];
        if (!g2.eigvec[k].is_zero()) x2[k] = g2.eigvec[k];
      }
      if (g.bracket_vec(x1, x2).empty()) continue;
      bool wrap = g1.i + g2.i >= p;
      int i3 = (g1.i + g2.i) % p;
      Poly q = pmul(Poly(g1.num), Poly(g2.num));
      auto b1 = beta(g1.i), b2 = beta(g2.i), b3 = beta(i3);
      for (size_t r = 0; r < m.branch.size(); ++r) {
        // y^{i1+i2} = y^{i3} f on wrap; f is absorbed into the branch exponents
        int e = b3[r] - b1[r] - b2[r] + (wrap ? m.branch[r].second : 0);
        if (e < 0) return false; // would leave the span
        Rat nb = Rat(0) - m.branch[r].first;
        for (int k = 0; k < e; ++k) q = pmul(q, Poly{nb, Rat(1)});
      }
      int deg_max = 0;
      for (int br : b3) deg_max += br;
      deg_max += 2 * a.bound * (int)a.punctures.size() - i3 * degf / p;
      if ((int)q.size() - 1 > deg_max) return false;
    }
  return true;
}

namespace {

// coefficients of (1 + c t)^q up to degree n, q rational
std::vector<Rat> binom_series(const Rat& q, const Rat& c, int n) {
  std::vector<Rat> s(n + 1);
  s[0] = 1;
  for (int k = 1; k <= n; ++k)
    s[k] = s[k - 1] * (q - Rat(k - 1)) / Rat(k) * c;
  return s;
}

std::vector<Rat> series_mul(const std::vector<Rat>& x, const std::vector<Rat>& y, int n) {
  std::vector<Rat> s(n + 1, Rat(0));
  for (int i = 0; i <= n && i < (int)x.size(); ++i)
    for (int j = 0; i + j <= n && j < (int)y.size(); ++j) s[i + j] += x[i] * y[j];
  return s;
}

} // namespace

std::vector<Cyc> expand_gen(const GlobalAlgebra& a, const GlobalAlgebra::Gen& gen,
                            int puncture, int sheet_e, int hi) {
  const KummerModel& m = *a.model;
  int p = m.p, K = a.bound;
  Rat at = a.punctures.at(puncture);
  Poly f = model_f(m);
  auto root = rat_root(peval(f, at), p);
  if (!root) throw std::domain_error("expand_gen: f(a) has no rational p-th root");
  int n = hi + K; // series degree in t before the t^-K offset
  std::vector<Rat> s(n + 1, Rat(0));
  // numerator P(a + t)
  for (size_t d = 0; d < gen.num.size(); ++d) {
    Rat pw = 1; // a^{d-k} binomial expansion
    std::vector<Rat> bin(n + 1, Rat(0));
    for (int k = 0; k <= (int)d && k <= n; ++k) {
      // C(d,k) a^{d-k}
      Rat c = 1;
      for (int t = 0; t < k; ++t) c = c * Rat((long)d - t) / Rat(t + 1);
      Rat ap = 1;
      for (size_t t = 0; t + k < d; ++t) ap = ap * at;
      bin[k] = c * ap;
    }
    (void)pw;
    for (int k = 0; k <= n; ++k) s[k] += gen.num[d] * bin[k];
  }
  // branch denominators and the y^i unit part
  for (size_t r = 0; r < m.branch.size(); ++r) {
    auto& [b, e] = m.branch[r];
    int betar = gen.i * e / p;
    Rat c = at - b;
    if (betar) {
      Rat lead = 1;
      for (int k = 0; k < betar; ++k) lead = lead / c;
      auto ser = binom_series(Rat(-betar), Rat(1) / c, n);
      for (auto& v : ser) v = v * lead;
      s = series_mul(s, ser, n);
    }
    // (1 + t/c)^{e i / p}
    Rat q(e * gen.i, p);
    q.canonicalize();
    if (q != 0) s = series_mul(s, binom_series(q, Rat(1) / c, n), n);
  }
  // other punctures
  for (size_t j = 0; j < a.punctures.size(); ++j) {
    if ((int)j == puncture || K == 0) continue;
    Rat c = at - a.punctures[j];
    Rat lead = 1;
    for (int k = 0; k < K; ++k) lead = lead / c;
    auto ser = binom_series(Rat(-K), Rat(1) / c, n);
    for (auto& v : ser) v = v * lead;
    s = series_mul(s, ser, n);
  }
  // scale by y(a)^i = (zeta^e root)^i and apply the t^-K offset
  Rat ri = 1;
  for (int k = 0; k < gen.i; ++k) ri = ri * *root;
  Cyc scale = Cyc::zeta_pow(p, sheet_e * gen.i % p) * Cyc(ri);
  std::vector<Cyc> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = scale * Cyc(s[k]);
  return out; // exponents -K .. hi
}

/* ---- canonical smoothing ---- */

TauPair alpha_image(int n, int i, int j) {
  TauPair out;
  if (j <= n) out.plus[{i - j, j}] = 1;
  if (i <= n) out.minus[{j - i, i}] = 1;
  return out;
}

TauPair tau_mul(int n, const TauPair& a, const TauPair& b) {
  TauPair out;
  auto mul = [n](const std::map<std::pair<int, int>, Rat>& x,
                 const std::map<std::pair<int, int>, Rat>& y,
                 std::map<std::pair<int, int>, Rat>& z) {
    for (auto& [kx, vx] : x)
      for (auto& [ky, vy] : y) {
        int e = kx.first + ky.first, t = kx.second + ky.second;
        if (t > n) continue;
        z[{e, t}] += vx * vy;
        if (z[{e, t}] == 0) z.erase({e, t});
      }
  };
  mul(a.plus, b.plus, out.plus);
  mul(a.minus, b.minus, out.minus);
  return out;
}

bool in_node_subalgebra(const TauPair& x, int n) {
  // sum a_ij (t+^{i-j} tau^j, t-^{j-i} tau^i), i,j >= 0; terms whose partner
  // falls beyond the tau-truncation are unconstrained
  for (auto& [k, v] : x.plus) {
    int i = k.first + k.second, j = k.second;
    if (i < 0 || j < 0) return false;
    if (i > n) continue;
    auto it = x.minus.find({j - i, i});
    if (it == x.minus.end() || it->second != v) return false;
  }
  for (auto& [k, v] : x.minus) {
    int i = k.second, j = k.first + k.second;
    if (i < 0 || j < 0) return false;
    if (j > n) continue;
    auto it = x.plus.find({i - j, j});
    if (it == x.plus.end() || it->second != v) return false;
  }
  return true;
}

} // namespace twistcb
