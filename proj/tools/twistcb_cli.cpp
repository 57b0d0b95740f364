#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistcb.h"

using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code = 0;
  std::string body;
};

Result call(int (*fn)(twistcb_ctx*, const char*, char**), const json& cfg) {
  twistcb_ctx* ctx = twistcb_ctx_new();
  char* out = nullptr;
  int rc = fn(ctx, cfg.dump().c_str(), &out);
  Result r;
  r.code = rc;
  if (out) {
    r.body = out;
    twistcb_free_string(out);
  }
  if (rc == TWISTCB_EINVAL) r.body = twistcb_last_error(ctx);
  twistcb_ctx_free(ctx);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--input", "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// stable one-field rendering of a labels block for CSV rows
std::string labels_csv(const json& labels) {
  std::string s;
  for (auto& [k, v] : labels.items()) {
    if (!s.empty()) s += ' ';
    s += k + "=" + v["weight"].dump();
    if (v.value("triv", 0) != 0) s += "@" + std::to_string(v["triv"].get<int>());
  }
  return s;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted conformal blocks toolkit"};
  app.require_subcommand(1);

  std::string algebra = "A1", format = "json", input, rho, suite;
  long level = 1, p = 2, depth = 3, seed = 0;
  app.add_option("--seed", seed, "seed for randomized property checks");

  auto add_common = [&](CLI::App* c, bool with_depth) {
    c->add_option("--algebra", algebra, "algebra type (A1, A2, ...)");
    c->add_option("--level", level, "level bound");
    c->add_option("--p", p, "cyclic order of the automorphism");
    if (with_depth) c->add_option("--depth", depth, "truncation depth");
  };

  auto* weights = app.add_subcommand("weights", "level-bounded dominant weights");
  add_common(weights, false);
  weights->add_option("--rho", rho, "automorphism: trivial | outer");

  auto* rank = app.add_subcommand("rank", "conformal-block rank for a covering graph");
  add_common(rank, true);
  rank->add_option("--input", input, "graph + labels JSON file")->required();
  rank->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* check = app.add_subcommand("check", "identity-check suites");
  add_common(check, true);
  check->add_option("suite", suite, "virasoro | sewing | torsor | propagation")->required();
  long kmax = 2;
  check->add_option("--kmax", kmax, "Virasoro mode bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (weights->parsed()) {
      json cfg{{"algebra", algebra}, {"level", level}, {"p", p}};
      if (!rho.empty()) cfg["rho"] = rho;
      auto r = call(twistcb_weights, cfg);
      if (r.code != TWISTCB_OK) {
        std::cerr << "error: " << r.body << "\n";
        return 2;
      }
      std::cout << r.body << "\n";
      return 0;
    }
    if (rank->parsed()) {
      json in = json::parse(slurp(input));
      if (!in.contains("graph") || !in.contains("labels")) {
        std::cerr << "error: input must contain \"graph\" and \"labels\"\n";
        return 2;
      }
      json cfg{{"algebra", algebra}, {"level", level}, {"depth", depth},
               {"graph", in["graph"]},  {"labels", in["labels"]}};
      auto r = call(twistcb_rank, cfg);
      if (r.code != TWISTCB_OK) {
        std::cerr << "error: " << r.body << "\n";
        return 2;
      }
      if (format == "csv") {
        json res = json::parse(r.body);
        std::cout << "graph,labels,level,rank,stabilized,depth\n"
                  << in.value("id", input) << "," << labels_csv(in["labels"]) << "," << level
                  << "," << res["rank"] << "," << (res["stabilized"].get<bool>() ? 1 : 0) << ","
                  << res["depth"] << "\n";
      } else {
        std::cout << r.body << "\n";
      }
      return 0;
    }
    // check
    json cfg{{"suite", suite},  {"algebra", algebra}, {"level", level},
             {"depth", depth},  {"kmax", kmax},       {"seed", seed}};
    auto r = call(twistcb_check, cfg);
    if (r.code == TWISTCB_EINVAL) {
      std::cerr << "error: " << r.body << "\n";
      return 2;
    }
    std::cout << r.body << "\n";
    return r.code == TWISTCB_OK ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
