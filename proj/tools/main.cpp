#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "app.hpp"

using namespace fuzzcyl::app;

namespace {

int emit(const Outcome& o, const std::string& out) {
  if (out.empty()) {
    std::cout << o.text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cout << error_outcome("cannot write " + out, {{"kind", "io"}}).text;
      return 2;
    }
    f << o.text;
  }
  return o.exit_code;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw ConfigError("bad number '" + item + "' in hbar list");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy cylinder algebras: representations, checks and oracles"};
  app.require_subcommand(0, 1);

  std::string config_path, out, format, hbars, family, carrier, cylinder, profile, expr, interval;
  bool csv = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> x0, tol;
  std::optional<int> truncation, trials, grid_size, instances, max_m;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--csv", csv, "same as --format csv");
  app.add_option("--hbars", hbars, "comma separated hbar values");
  app.add_option("--seed", seed, "seed for randomized suites (default 0)");
  app.add_option("--family", family, "shift, plane_plus, plane_minus, poincare or custom");
  app.add_option("--carrier", carrier, "carrier interval, e.g. [0,1]");
  app.add_option("--cylinder", cylinder, "finite, half_finite, infinite or general");
  app.add_option("--x0", x0, "orbit base point");
  app.add_option("--truncation", truncation, "orbit window size");
  app.add_option("--trials", trials, "random triples for algebra-check");
  app.add_option("--grid-size", grid_size, "sampling grid size");
  app.add_option("--tol", tol, "tolerance");
  app.add_option("--profile", profile, "plane_plus, plane_minus, poincare or custom");
  app.add_option("--expr", expr, "C(u) for a custom profile");
  app.add_option("--interval", interval, "two-generator interval I");
  app.add_option("--instances", instances, "random oracle instances");
  app.add_option("--max-m", max_m, "largest finite set size for the oracle");

  std::string pairs;
  app.add_option("--pairs", pairs, "JSON file {\"f\": {...}, \"g\": {...}} for poisson-limit");

  const std::map<std::string, std::string> about{
      {"orbit", "orbit of x0 under alpha"},
      {"rep", "matrix representation on an orbit"},
      {"algebra-check", "algebra axioms and U relations on random elements"},
      {"poisson-limit", "first-order term of the star product as hbar -> 0"},
      {"subalgebra", "two-generator relations for a commutator profile"},
      {"oracle", "exact finite-set suite and interval-vs-oracle agreement"}};
  for (const auto& name : commands()) {
    auto it = about.find(name);
    app.add_subcommand(name, it == about.end() ? "" : it->second)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit(error_outcome(e.what(), {{"kind", "arguments"}}), "");
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config " + config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      cfg = config_from_json(j);
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (!out.empty()) cfg.out = out;
    if (!format.empty()) cfg.format = format;
    if (csv) cfg.format = "csv";
    if (!hbars.empty()) cfg.hbars = parse_list(hbars);
    if (seed) cfg.seed = *seed;
    if (!family.empty()) cfg.family["kind"] = family;
    if (!carrier.empty()) cfg.family["interval"] = carrier;
    if (!cylinder.empty()) cfg.cylinder = cylinder;
    if (x0) cfg.x0 = x0;
    if (truncation) cfg.truncation = *truncation;
    if (trials) cfg.trials = *trials;
    if (grid_size) cfg.grid_size = *grid_size;
    if (tol) cfg.tol = *tol;
    if (!profile.empty()) cfg.profile = profile;
    if (!expr.empty()) cfg.profile_expr = expr;
    if (!interval.empty()) cfg.interval = interval;
    if (instances) cfg.instances = *instances;
    if (max_m) cfg.max_M = *max_m;
    if (!pairs.empty()) {
      std::ifstream in(pairs);
      if (!in) throw ConfigError("cannot read pairs " + pairs);
      json p;
      try {
        p = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("pairs file is not valid JSON: ") + e.what());
      }
      if (!p.is_object() || !p.contains("f") || !p.contains("g") || p.size() != 2)
        throw ConfigError("pairs file needs exactly the keys f and g");
      cfg.f = p["f"];
      cfg.g = p["g"];
    }
    // re-validate after the overrides
    cfg = config_from_json(to_json(cfg));
    if (cfg.command.empty()) throw ConfigError("no command given");
  } catch (const ConfigError& e) {
    return emit(error_outcome(e.what(), {{"kind", "config"}, {"config", config_path}}), "");
  } catch (const std::exception& e) {
    return emit(error_outcome(e.what(), {{"kind", "arguments"}}), "");
  }
  return emit(run(cfg), cfg.out);
}
