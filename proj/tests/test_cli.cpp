#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "app.hpp"

using namespace fuzzcyl;
using namespace fuzzcyl::app;

namespace {

RunConfig cfg(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

json run_json(const RunConfig& c, int* code = nullptr) {
  Outcome o = run(c);
  if (code) *code = o.exit_code;
  return json::parse(o.text);
}

// runs the built binary, returns exit status and stdout
std::pair<int, std::string> shell(const std::string& args) {
  std::string cmd = std::string(FUZZCYL_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WEXITSTATUS(st), out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l)) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("config round trip") {
  RunConfig c = cfg("rep");
  c.hbars = {0.125};
  c.x0 = 0.0625;
  c.seed = 99;
  c.elements = json::array({{{"terms", json::array({{{"n", 1}, {"re", "x"}}})}}});
  c.format = "csv";
  CHECK(config_from_json(to_json(c)) == c);
  CHECK(config_from_json(to_json(RunConfig{})) == RunConfig{});

  json bad = to_json(c);
  bad["frobnicate"] = 1;
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  json fam = to_json(c);
  fam["family"]["colour"] = "red";
  CHECK_THROWS_AS(config_from_json(fam), ConfigError);
  fam = to_json(c);
  fam["family"]["interval"] = "[0,1";
  CHECK_THROWS_AS(config_from_json(fam), ConfigError);
  json neg = to_json(c);
  neg["grid_size"] = -3;
  CHECK_THROWS_AS(config_from_json(neg), ConfigError);
}

TEST_CASE("rep on the order-4 cylinder") {
  int code = -1;
  auto j = run_json(cfg("rep"), &code);
  CHECK(code == 0);
  CHECK(j["results"]["dim"] == 4);
  auto V = j["results"]["V"];
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) CHECK(V[i][k].get<int>() == (i == k + 1 ? 1 : 0));
  CHECK(j["results"]["points"][0].get<double>() == 0.125);
  CHECK(j["pass"] == true);
}

TEST_CASE("family hbar is the default for single-hbar commands") {
  RunConfig c = cfg("rep");
  c.family["hbar"] = 0.125;
  auto j = run_json(c);
  CHECK(j["results"]["dim"] == 8);
  c.hbars = {0.25};
  CHECK(run_json(c)["results"]["dim"] == 4);
}

TEST_CASE("empty element list") {
  RunConfig c = cfg("algebra-check");
  c.elements = json::array();
  int code = -1;
  auto j = run_json(c, &code);
  CHECK(code == 0);
  c = cfg("rep");
  CHECK(run(c).exit_code == 0);
}

TEST_CASE("fixed seed is deterministic") {
  RunConfig c = cfg("algebra-check");
  c.trials = 5;
  c.seed = 7;
  CHECK(run(c).text == run(c).text);
  RunConfig o = cfg("oracle");
  o.instances = 3;
  o.seed = 11;
  CHECK(run(o).text == run(o).text);
  CHECK(run(o).exit_code == 0);
}

TEST_CASE("poisson-limit csv") {
  RunConfig c = cfg("poisson-limit");
  c.format = "csv";
  Outcome o = run(c);
  CHECK(o.exit_code == 0);
  auto ls = lines(o.text);
  REQUIRE(ls.size() >= 4);
  CHECK(ls[0] == "hbar,residual,fitted_order,commutator_error");
  double prev = INFINITY;
  for (int i = 1; i <= 3; ++i) {
    std::stringstream ss(ls[i]);
    std::string h, r;
    std::getline(ss, h, ',');
    std::getline(ss, r, ',');
    CHECK(std::stod(r) < prev);
    prev = std::stod(r);
  }
}

TEST_CASE("subalgebra reports the plane obstruction") {
  RunConfig c = cfg("subalgebra");
  c.profile = "plane_minus";
  int code = -1;
  auto j = run_json(c, &code);
  CHECK(code == 1);
  CHECK(j["pass"] == false);
  c.profile = "poincare";
  CHECK(run(c).exit_code == 0);
}

TEST_CASE("bad input exits 2") {
  RunConfig c = cfg("rep");
  c.family = {{"kind", "shift"}, {"interval", "[0,1"}};
  int code = -1;
  auto j = run_json(c, &code);
  CHECK(code == 2);
  CHECK(j.contains("error"));
  c = cfg("rep");
  c.x0 = 7.0;
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("binary") {
  auto [code, out] = shell("rep --hbars 0.25");
  CHECK(code == 0);
  CHECK(json::parse(out)["results"]["dim"] == 4);

  std::string path = "cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"command": "orbit", "unknown_key": 1})";
  }
  auto [c2, o2] = shell("--config " + path);
  CHECK(c2 == 2);
  CHECK(json::parse(o2)["context"]["kind"] == "config");
  {
    std::ofstream f(path);
    f << R"({"command": "orbit", "hbars": [0.125]})";
  }
  auto [c3, o3] = shell("--config " + path + " --csv");
  CHECK(c3 == 0);
  CHECK(lines(o3)[0] == "n,x");
  CHECK(lines(o3).size() > 8);
  std::remove(path.c_str());

  {
    std::ofstream f(path);
    f << R"({"f": {"1": "1"}, "g": {"0": "x^2"}})";
  }
  auto [c4, o4] = shell("poisson-limit --family poincare --pairs " + path);
  CHECK(c4 == 0);
  CHECK(json::parse(o4)["results"]["order"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
  std::remove(path.c_str());

  CHECK(shell("nosuchcommand").first == 2);
  CHECK(shell("rep --family moebius").first == 2);
}
