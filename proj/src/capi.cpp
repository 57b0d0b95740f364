#include "twistcb.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twistcb/blocks.hpp"
#include "twistcb/gamma.hpp"
#include "twistcb/sugawara.hpp"
#include "twistcb/torsorlab.hpp"

using json = nlohmann::ordered_json;
using namespace twistcb;

struct twistcb_ctx {
  std::string err;
};

namespace {

constexpr int kMaxP = 7, kMaxLevel = 3, kDefaultMaxDepth = 6;

int depth_ceiling() {
  if (const char* s = std::getenv("TWISTCB_MAX_DEPTH")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return kDefaultMaxDepth;
}

long get_long(const json& j, const char* key, long dflt, long lo, long hi) {
  long v = dflt;
  if (j.contains(key)) {
    if (!j[key].is_number_integer()) throw std::invalid_argument(std::string(key) + ": expected integer");
    v = j[key].get<long>();
  }
  if (v < lo || v > hi)
    throw std::invalid_argument(std::string(key) + " out of range [" + std::to_string(lo) + "," +
                                std::to_string(hi) + "]");
  return v;
}

const LieAlgebra& algebra_of(const json& j) {
  static std::map<std::string, LieAlgebra> cache;
  std::string t = j.value("algebra", "A1");
  auto it = cache.find(t);
  if (it == cache.end()) it = cache.emplace(t, LieAlgebra::build(t)).first;
  return it->second;
}

GammaAction rho_of(const json& j, const LieAlgebra& g, int p) {
  std::string r = j.value("rho", "trivial");
  if (r == "trivial") return GammaAction::trivial(g, p);
  if (r == "outer") return GammaAction::outer_typeA(g);
  throw std::invalid_argument("rho: expected \"trivial\" or \"outer\"");
}

json weight_json(const Weight& w) {
  return json(w);
}

std::string run_weights(const json& cfg) {
  const LieAlgebra& g = algebra_of(cfg);
  long level = get_long(cfg, "level", 1, 0, kMaxLevel);
  auto P = g.enumerate_levels(level);
  json out;
  out["algebra"] = cfg.value("algebra", "A1");
  out["level"] = level;
  json rows = json::array();
  for (auto& w : P) {
    json row;
    row["weight"] = weight_json(w);
    row["dim"] = Rat(g.weyl_dim(w)).get_num().get_si();
    rows.push_back(row);
  }
  out["weights"] = rows;
  if (cfg.contains("rho") && cfg["rho"] != "trivial") {
    auto rho = rho_of(cfg, g, (int)get_long(cfg, "p", 2, 2, kMaxP));
    std::map<Weight, int> idx;
    for (size_t i = 0; i < P.size(); ++i) idx[P[i]] = (int)i;
    std::vector<char> seen(P.size(), 0);
    json orbits = json::array();
    for (size_t i = 0; i < P.size(); ++i) {
      if (seen[i]) continue;
      json orb = json::array();
      Weight w = P[i];
      while (!seen[idx.at(w)]) {
        seen[idx.at(w)] = 1;
        orb.push_back(idx.at(w));
        w = gamma_on_weight(rho, w);
      }
      orbits.push_back(orb);
    }
    out["orbits"] = orbits;
  }
  return out.dump();
}

std::map<std::string, Labeled> parse_labels(const json& cfg, const LieAlgebra& g, long level) {
  if (!cfg.contains("labels") || !cfg["labels"].is_object())
    throw std::invalid_argument("labels: expected an object keyed by leg label");
  std::map<std::string, Labeled> out;
  for (auto& [key, val] : cfg["labels"].items()) {
    if (!val.contains("weight") || !val["weight"].is_array())
      throw std::invalid_argument("labels." + key + ".weight: expected an array of integers");
    Weight w = val["weight"].get<Weight>();
    if ((long)w.size() != g.rank)
      throw std::invalid_argument("labels." + key + ".weight: wrong length for the algebra");
    Labeled l{w, (int)val.value("triv", 0)};
    if (!g.dominant(l.wt) || g.level_of(l.wt) > level)
      throw std::invalid_argument("labels." + key + ": not dominant of level <= " +
                                  std::to_string(level));
    out[key] = l;
  }
  return out;
}

std::string run_rank(const json& cfg) {
  const LieAlgebra& g = algebra_of(cfg);
  long level = get_long(cfg, "level", 1, 1, kMaxLevel);
  int depth = (int)get_long(cfg, "depth", 3, 0, depth_ceiling());
  if (!cfg.contains("graph")) throw std::invalid_argument("graph: missing");
  CoveringGraph graph = parse_graph(cfg["graph"].dump());
  if (graph.p > kMaxP) throw std::invalid_argument("graph.p out of range");
  for (auto& msg : validate(graph)) throw std::invalid_argument("graph: " + msg);
  auto labels = parse_labels(cfg, g, level);
  for (auto& leg : graph.legs)
    if (!labels.count(leg.label)) throw std::invalid_argument("labels: missing leg " + leg.label);
  if (labels.size() != graph.legs.size())
    throw std::invalid_argument("labels: entry without a matching leg");

  json out;
  long genus = base_genus(graph);
  if (!graph.edges.empty() || genus > 0) {
    if (!graph.branch.empty())
      throw std::invalid_argument("nodal graphs with branch points are not supported");
    auto table = fusion_table(g, level);
    out["rank"] = degeneration_rank(graph, labels, table);
    out["stabilized"] = true;
    out["depth"] = 0;
    out["method"] = "degeneration";
  } else {
    if (!graph.branch.empty())
      throw std::invalid_argument(
          "direct ranks on branched graphs need coordinates; not exposed here");
    KummerModel m{graph.p, {}};
    auto rho = GammaAction::trivial(g, graph.p);
    std::vector<Rat> pts;
    std::vector<Labeled> ordered;
    long next = 0;
    for (auto& leg : graph.legs) {
      pts.push_back(Rat(next));
      next = next > 0 ? -next : -next + 1; // 0, 1, -1, 2, -2, ...
      ordered.push_back(labels.at(leg.label));
    }
    auto r = coinvariant_rank(m, pts, rho, ordered, level, depth);
    out["rank"] = r.rank;
    out["stabilized"] = r.stabilized;
    out["depth"] = r.depth;
    out["method"] = "coinvariant";
  }
  return out.dump();
}

bool suite_virasoro(const json& cfg, json& out) {
  const LieAlgebra& g = algebra_of(cfg);
  long level = get_long(cfg, "level", 1, 1, kMaxLevel);
  int depth = (int)get_long(cfg, "depth", 3, 0, depth_ceiling());
  int kmax = (int)get_long(cfg, "kmax", 2, 1, 3);
  auto cas = casimir(g);
  auto mod = integrable_quotient(verma(g, Weight(g.rank, 0), level, depth));
  bool ok = true;
  json fails = json::array();
  for (int k = -kmax; k <= kmax; ++k)
    for (int l = k; l <= kmax; ++l) {
      auto r = virasoro_check(mod, cas, k, l);
      if (!r.ok) {
        ok = false;
        fails.push_back(r.detail);
      }
    }
  out["pairs"] = (2 * kmax + 1) * (kmax + 1);
  if (!ok) out["failures"] = fails;
  return ok;
}

bool suite_sewing(const json& cfg, json& out) {
  const LieAlgebra& g = algebra_of(cfg);
  long level = get_long(cfg, "level", 1, 1, kMaxLevel);
  int depth = (int)get_long(cfg, "depth", 3, 0, depth_ceiling());
  bool ok = true;
  json rows = json::array();
  for (auto& W : g.enumerate_levels(level)) {
    auto s = sewing_element(g, W, level, depth);
    bool ann = sewing_annihilates(s, 3);
    ok &= ann;
    json row;
    row["weight"] = weight_json(W);
    row["annihilated"] = ann;
    rows.push_back(row);
  }
  out["elements"] = rows;
  if (depth >= 4) {
    auto r = sewing_map_check(g, level, depth);
    out["smoothing"] = {{"ok", r.ok}, {"nodal_rank", r.nodal_rank}, {"factor_rank", r.factor_rank}};
    ok &= r.ok;
  }
  return ok;
}

bool suite_torsor(const json&, json& out) {
  FiniteCover cov;
  cov.nbase = 2;
  cov.pi = {0, 1, 1};
  cov.gam = {0, 2, 1};
  auto s4 = FiniteGroup::sym(4);
  auto rho4 = conj_by(s4, FiniteGroup::perm_index(s4, {1, 0, 3, 2}));
  int t12 = FiniteGroup::perm_index(s4, {1, 0, 2, 3});
  GammaGBundle ref{&cov, &s4, rho4, {0, 0, 0}};
  GammaGBundle tw{&cov, &s4, rho4, {t12, t12, t12}};
  bool obstruction = !local_type_equal(ref, tw, 0) && local_type_equal(ref, tw, 1) &&
                     !invariant_pushforward(ref, tw).torsor;
  out["s4_obstruction"] = obstruction;

  auto s3 = FiniteGroup::sym(3);
  auto rho3 = conj_by(s3, FiniteGroup::perm_index(s3, {1, 0, 2}));
  auto bundles = enumerate_bundles(cov, s3, rho3);
  bool prop = true, round = true;
  for (auto& a : bundles)
    for (auto& b : bundles) {
      bool all = true;
      for (int y = 0; y < cov.nbase; ++y) all &= local_type_equal(a, b, y);
      prop &= invariant_pushforward(a, b).torsor == all;
      if (&a == &bundles.front() && all) round &= equivalence_roundtrip(a, b);
    }
  out["pushforward_matches_local_type"] = prop;
  out["roundtrip"] = round;
  return obstruction && prop && round;
}

bool suite_propagation(const json& cfg, json& out) {
  int depth = (int)get_long(cfg, "depth", 3, 0, depth_ceiling());
  auto a1 = LieAlgebra::build("A1");
  KummerModel m{2, {}};
  auto triv = GammaAction::trivial(a1, 2);
  auto p1 = propagation_check(m, {Rat(0), Rat(1), Rat(-1)}, triv,
                              {{Weight{1}, 0}, {Weight{1}, 0}, {Weight{0}, 0}}, {Rat(2)}, 1, depth);
  out["untwisted"] = {{"ok", p1.ok}, {"rank", p1.base.rank}};
  auto a2 = LieAlgebra::build("A2");
  auto rho = GammaAction::outer_typeA(a2);
  KummerModel tm{2, {{Rat(1), 1}, {Rat(-1), 1}}};
  auto p2 = propagation_check(tm, {Rat(5, 4)}, rho, {{Weight{1, 0}, 0}}, {Rat(5, 3)}, 1, depth);
  out["twisted"] = {{"ok", p2.ok}, {"rank", p2.base.rank}};
  return p1.ok && p2.ok;
}

std::string run_check(const json& cfg, bool& pass) {
  std::string suite = cfg.value("suite", "");
  json out;
  out["suite"] = suite;
  json detail;
  if (suite == "virasoro")
    pass = suite_virasoro(cfg, detail);
  else if (suite == "sewing")
    pass = suite_sewing(cfg, detail);
  else if (suite == "torsor")
    pass = suite_torsor(cfg, detail);
  else if (suite == "propagation")
    pass = suite_propagation(cfg, detail);
  else
    throw std::invalid_argument("unknown suite: " + suite);
  out["pass"] = pass;
  out["detail"] = detail;
  return out.dump();
}

char* dup_string(const std::string& s) {
  char* p = (char*)std::malloc(s.size() + 1);
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
int guarded(twistcb_ctx* ctx, const char* config_json, char** out, F f) {
  if (!ctx) return TWISTCB_EINVAL;
  ctx->err.clear();
  if (!config_json || !out) {
    ctx->err = "null argument";
    return TWISTCB_EINVAL;
  }
  *out = nullptr;
  try {
    json cfg = json::parse(config_json);
    return f(cfg);
  } catch (const std::exception& e) {
    ctx->err = e.what();
    return TWISTCB_EINVAL;
  }
}

} // namespace

extern "C" {

twistcb_ctx* twistcb_ctx_new(void) {
  return new twistcb_ctx;
}

void twistcb_ctx_free(twistcb_ctx* ctx) {
  delete ctx;
}

const char* twistcb_last_error(const twistcb_ctx* ctx) {
  return ctx ? ctx->err.c_str() : "";
}

int twistcb_weights(twistcb_ctx* ctx, const char* config_json, char** out) {
  return guarded(ctx, config_json, out, [&](const json& cfg) {
    *out = dup_string(run_weights(cfg));
    return TWISTCB_OK;
  });
}

int twistcb_rank(twistcb_ctx* ctx, const char* config_json, char** out) {
  return guarded(ctx, config_json, out, [&](const json& cfg) {
    *out = dup_string(run_rank(cfg));
    return TWISTCB_OK;
  });
}

int twistcb_check(twistcb_ctx* ctx, const char* config_json, char** out) {
  return guarded(ctx, config_json, out, [&](const json& cfg) {
    bool pass = false;
    *out = dup_string(run_check(cfg, pass));
    return pass ? TWISTCB_OK : TWISTCB_FAIL;
  });
}

void twistcb_free_string(char* s) {
  std::free(s);
}

} // extern "C"
