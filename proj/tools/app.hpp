#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzcyl/crossed_product.hpp"
#include "fuzzcyl/star_product.hpp"

namespace fuzzcyl::app {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  json family = {{"kind", "shift"}, {"interval", "[0,1]"}};
  std::string cylinder = "general";
  json elements = json::array();
  std::vector<double> hbars;  // empty: the command's default
  int grid_size = 101;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::optional<double> x0;
  int truncation = 64;
  int trials = 0;
  std::string profile = "plane_plus";
  std::string profile_expr;
  std::string interval;  // two-generator I, default depends on the profile
  int instances = 12;
  int max_M = 8;
  json f = {{"1", "x"}};
  json g = {{"0", "x^2"}};
  std::string format = "json";
  std::string out;

  bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& commands();

json to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);

// descriptors
BijectionFamily family_from_json(const json& j);
AlgebraPtr algebra_from_config(const RunConfig& c, double hbar);
Element element_from_json(const json& j, const AlgebraPtr& alg);
Coefficients coefficients_from_json(const json& j, const Interval& carrier);

Element random_element(const AlgebraPtr& alg, std::mt19937_64& rng, int terms = 3, int max_shift = 2);

struct Outcome {
  int exit_code = 0;
  std::string text;
};

Outcome run(const RunConfig& c);
Outcome error_outcome(const std::string& error, const json& context);

std::string fmt(double v);

}  // namespace fuzzcyl::app
