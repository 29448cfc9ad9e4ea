#include "app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/expression.hpp"
#include "fuzzcyl/finite_oracle.hpp"
#include "fuzzcyl/representation.hpp"
#include "fuzzcyl/subalgebra.hpp"

namespace fuzzcyl::app {

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"rep", "algebra-check", "poisson-limit", "subalgebra", "oracle", "orbit"};
  return c;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["family"] = c.family;
  j["cylinder"] = c.cylinder;
  j["elements"] = c.elements;
  j["hbars"] = c.hbars;
  j["grid_size"] = c.grid_size;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["x0"] = c.x0 ? json(*c.x0) : json(nullptr);
  j["truncation"] = c.truncation;
  j["trials"] = c.trials;
  j["profile"] = c.profile;
  j["profile_expr"] = c.profile_expr;
  j["interval"] = c.interval;
  j["instances"] = c.instances;
  j["max_M"] = c.max_M;
  j["f"] = c.f;
  j["g"] = c.g;
  j["format"] = c.format;
  j["out"] = c.out;
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "command") c.command = v.get<std::string>();
      else if (k == "family") c.family = v;
      else if (k == "cylinder") c.cylinder = v.get<std::string>();
      else if (k == "elements") c.elements = v;
      else if (k == "hbars") c.hbars = v.get<std::vector<double>>();
      else if (k == "grid_size") c.grid_size = v.get<int>();
      else if (k == "tol") c.tol = v.get<double>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "x0") c.x0 = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (k == "truncation") c.truncation = v.get<int>();
      else if (k == "trials") c.trials = v.get<int>();
      else if (k == "profile") c.profile = v.get<std::string>();
      else if (k == "profile_expr") c.profile_expr = v.get<std::string>();
      else if (k == "interval") c.interval = v.get<std::string>();
      else if (k == "instances") c.instances = v.get<int>();
      else if (k == "max_M") c.max_M = v.get<int>();
      else if (k == "f") c.f = v;
      else if (k == "g") c.g = v;
      else if (k == "format") c.format = v.get<std::string>();
      else if (k == "out") c.out = v.get<std::string>();
      else throw ConfigError("unknown config key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  if (!c.command.empty() && std::find(commands().begin(), commands().end(), c.command) == commands().end())
    throw ConfigError("unknown command '" + c.command + "'");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
  for (double h : c.hbars)
    if (!(h >= 0.0) || !std::isfinite(h)) throw ConfigError("hbar values must be finite and >= 0");
  if (c.grid_size < 2) throw ConfigError("grid_size must be >= 2");
  if (c.truncation < 1) throw ConfigError("truncation must be >= 1");
  if (c.trials < 0 || c.instances < 0) throw ConfigError("trials and instances must be >= 0");
  if (c.max_M < 1 || c.max_M > 8) throw ConfigError("max_M must be in [1, 8]");
  if (!(c.tol >= 0.0)) throw ConfigError("tol must be >= 0");
  if (!c.elements.is_array()) throw ConfigError("elements must be an array");
  try {
    family_from_json(c.family);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad family: ") + e.what());
  }
  return c;
}

BijectionFamily family_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("family must be an object");
  static const std::set<std::string> known{"kind", "interval", "forward", "inverse", "natural_domain", "hbar"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown family key '" + k + "'");
  if (j.contains("hbar") && !(j["hbar"].is_number() && j["hbar"].get<double>() > 0))
    throw ConfigError("family hbar must be a positive number");
  std::string kind = j.value("kind", "shift");
  Interval carrier = Interval::parse(j.value("interval", "[0,1]"));
  FamilyParams p;
  p.forward_expr = j.value("forward", "");
  p.inverse_expr = j.value("inverse", "");
  if (j.contains("natural_domain")) p.natural_domain = Interval::parse(j.at("natural_domain").get<std::string>());
  return make_family(parse_family_kind(kind), carrier, p);
}

AlgebraPtr algebra_from_config(const RunConfig& c, double hbar) {
  CylinderKind kind = parse_cylinder_kind(c.cylinder);
  if (kind == CylinderKind::General) return make_algebra(family_from_json(c.family).at(hbar), kind, hbar);
  if (c.family.value("kind", "shift") != "shift") throw ConfigError("finite/half_finite/infinite cylinders use the shift family");
  return make_cylinder(kind, Interval::parse(c.family.value("interval", "[0,1]")), hbar);
}

namespace {

ComplexMap complex_expr(const json& re, const json& im, double h) {
  Expression r = Expression::parse(re.is_null() ? "0" : re.get<std::string>());
  Expression i = Expression::parse(im.is_null() ? "0" : im.get<std::string>());
  return [r, i, h](double x) { return cplx{r(x, h), i(x, h)}; };
}

}  // namespace

Element element_from_json(const json& j, const AlgebraPtr& alg) {
  const json& terms = j.is_object() ? j.at("terms") : j;
  if (!terms.is_array()) throw ConfigError("element must be a list of terms");
  double h = alg->hbar().value_or(0.0);
  Element e(alg);
  for (const auto& t : terms) {
    int n = t.at("n").get<int>();
    json re = t.contains("re") ? t.at("re") : t.contains("f") ? t.at("f") : json(nullptr);
    json im = t.contains("im") ? t.at("im") : json(nullptr);
    Interval supp = t.contains("support") ? Interval::parse(t.at("support").get<std::string>()) : alg->I(n);
    supp = intersect(supp, alg->carrier());
    std::string label = re.is_null() ? "0" : re.get<std::string>();
    SupportedFunction f(alg->carrier(), supp, complex_expr(re, im, h), label);
    e.add_term(n, f, t.value("strict", false) ? TermMode::Strict : TermMode::Clip);
  }
  return e;
}

Coefficients coefficients_from_json(const json& j, const Interval& carrier) {
  if (!j.is_object()) throw ConfigError("cylinder function must map n to an expression");
  Coefficients out;
  for (const auto& [k, v] : j.items()) {
    int n = 0;
    auto r = std::from_chars(k.data(), k.data() + k.size(), n);
    if (r.ec != std::errc() || r.ptr != k.data() + k.size()) throw ConfigError("bad Fourier index '" + k + "'");
    json re = v.is_string() ? v : v.value("re", json(nullptr));
    json im = v.is_string() ? json(nullptr) : v.value("im", json(nullptr));
    out.emplace(n, SupportedFunction(carrier, carrier, complex_expr(re, im, 0.0), re.is_null() ? "0" : re.get<std::string>()));
  }
  return out;
}

Element random_element(const AlgebraPtr& alg, std::mt19937_64& rng, int terms, int max_shift) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> shift(-max_shift, max_shift);
  Element e(alg);
  for (int i = 0; i < terms; ++i) {
    int n = shift(rng);
    std::vector<cplx> co{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    if (alg->I(n).is_empty()) continue;
    e = e + Element::single(alg, n, polynomial(co, alg->carrier(), alg->I(n)));
  }
  return e;
}

namespace {

struct Report {
  json results = json::object();
  std::vector<CheckResult> checks;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// single-hbar commands fall back on the family's own hbar, if it has one
std::vector<double> hbars_or(const RunConfig& c, std::vector<double> dflt) {
  if (!c.hbars.empty()) return c.hbars;
  if (dflt.size() == 1 && c.family.contains("hbar")) return {c.family["hbar"].get<double>()};
  return dflt;
}

json checks_json(const std::vector<CheckResult>& cs) {
  json a = json::array();
  for (const auto& r : cs) {
    json o;
    o["relation"] = r.relation;
    o["residual"] = std::isfinite(r.residual) ? json(r.residual) : json(fmt(r.residual));
    o["tolerance"] = r.tolerance;
    o["pass"] = r.pass;
    if (!r.detail.empty()) o["detail"] = r.detail;
    a.push_back(o);
  }
  return a;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void csv_row(std::ostringstream& os, const std::vector<std::string>& r) {
  for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
  os << "\n";
}

void prefix(std::vector<CheckResult>& cs, const std::string& tag) {
  for (auto& c : cs) c.relation = tag + c.relation;
}

void add_checks(Report& r, std::vector<CheckResult> cs, const std::string& tag = {}) {
  prefix(cs, tag);
  r.checks.insert(r.checks.end(), cs.begin(), cs.end());
}

double default_x0(const AlgebraPtr& alg, const RunConfig& c, double h) {
  if (c.x0) return *c.x0;
  const Interval& iv = alg->carrier();
  return iv.lo_infinite() ? 0.0 : iv.lo() + 0.5 * h;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json a = json::array(), b = json::array();
    for (int k = 0; k < m.cols(); ++k) {
      a.push_back(m(i, k).real());
      b.push_back(m(i, k).imag());
    }
    re.push_back(a);
    im.push_back(b);
  }
  return {{"re", re}, {"im", im}};
}

void matrix_rows(Report& r, const std::string& name, const Eigen::MatrixXcd& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k)
      if (m(i, k) != cplx{}) r.rows.push_back({name, std::to_string(i), std::to_string(k), fmt(m(i, k).real()), fmt(m(i, k).imag())});
}

Report cmd_orbit(const RunConfig& c) {
  Report r;
  double h = hbars_or(c, {0.25}).front();
  AlgebraPtr alg = algebra_from_config(c, h);
  double x0 = default_x0(alg, c, h);
  OrbitSpec o = build_orbit(alg->alpha(), x0, c.truncation);
  r.results["hbar"] = h;
  r.results["x0"] = x0;
  r.results["n_minus"] = o.n_minus;
  r.results["n_plus"] = o.n_plus;
  r.results["truncated_minus"] = o.truncated_minus;
  r.results["truncated_plus"] = o.truncated_plus;
  r.results["points"] = o.points;
  r.header = {"n", "x"};
  for (int n = o.n_minus; n <= o.n_plus; ++n) r.rows.push_back({std::to_string(n), fmt(o.at(n))});
  r.checks.push_back(make_check("alpha(x_n) = x_{n+1}", orbit_residual(alg->alpha(), o), c.tol));
  return r;
}

Report cmd_rep(const RunConfig& c) {
  Report r;
  double h = hbars_or(c, {0.25}).front();
  AlgebraPtr alg = algebra_from_config(c, h);
  double x0 = default_x0(alg, c, h);
  MatrixRep rep = make_rep(alg->alpha(), x0, c.truncation);
  r.results["hbar"] = h;
  r.results["x0"] = x0;
  r.results["dim"] = rep.dim();
  r.results["points"] = rep.points;
  json V = json::array();
  for (int i = 0; i < rep.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < rep.dim(); ++k) row.push_back(static_cast<int>(rep.V(i, k).real()));
    V.push_back(row);
  }
  r.results["V"] = V;
  r.header = {"matrix", "row", "col", "re", "im"};
  matrix_rows(r, "V", rep.V);

  std::vector<Element> elems;
  for (const auto& d : c.elements) elems.push_back(element_from_json(d, alg));
  if (elems.empty()) return r;

  int dim = std::max(rep.dim(), 1);
  json reps = json::array();
  for (size_t i = 0; i < elems.size(); ++i) {
    Eigen::MatrixXcd m = represent(elems[i], rep);
    reps.push_back(matrix_json(m));
    matrix_rows(r, "element" + std::to_string(i), m);
  }
  r.results["elements"] = reps;

  auto reach = [](const Element& e) {
    int k = 0;
    for (const auto& [n, f] : e.terms()) k = std::max(k, std::abs(n));
    return k;
  };
  double hom = 0.0;
  for (const auto& x : elems)
    for (const auto& y : elems) {
      Eigen::MatrixXcd d = represent(x * y, rep) - represent(x, rep) * represent(y, rep);
      hom = std::max(hom, masked_max_abs(d, rep, reach(x) + reach(y)));
    }
  r.checks.push_back(make_check("rep(xy) = rep(x) rep(y)", hom, c.tol * dim));
  Eigen::MatrixXcd pm1 = rep.pi(partial_identity(alg->I(-1), alg->carrier()));
  r.checks.push_back(make_check("pi(p_-1) = V* V", masked_max_abs(pm1 - rep.Vstar * rep.V, rep, 1), 0.0));
  std::vector<SupportedFunction> samples;
  for (const auto& e : elems)
    for (const auto& [n, f] : e.terms()) samples.push_back(f);
  CovarianceOptions opt;
  opt.tol = std::max(c.tol, 1e-10);
  add_checks(r, covariance_check(alg, rep, samples, opt));
  return r;
}

Report cmd_algebra_check(const RunConfig& c) {
  Report r;
  std::mt19937_64 rng(c.seed);
  GridOptions go;
  go.grid_size = c.grid_size;
  json per = json::array();
  for (double h : hbars_or(c, {0.25})) {
    AlgebraPtr alg = algebra_from_config(c, h);
    std::vector<Element> elems;
    for (const auto& d : c.elements) elems.push_back(element_from_json(d, alg));
    if (elems.empty() && c.trials == 0) continue;
    const std::string tag = "h=" + fmt(h) + ": ";
    double assoc = 0.0, anti = 0.0;
    for (const auto& x : elems)
      for (const auto& y : elems) {
        anti = std::max(anti, residual(involution(x * y), involution(y) * involution(x), go));
        for (const auto& z : elems) assoc = std::max(assoc, residual((x * y) * z, x * (y * z), go));
      }
    for (int t = 0; t < c.trials; ++t) {
      Element x = random_element(alg, rng), y = random_element(alg, rng), z = random_element(alg, rng);
      assoc = std::max(assoc, residual((x * y) * z, x * (y * z), go));
      anti = std::max(anti, residual(involution(x * y), involution(y) * involution(x), go));
    }
    r.checks.push_back(make_check(tag + "(xy)z = x(yz)", assoc, c.tol));
    r.checks.push_back(make_check(tag + "(xy)* = y* x*", anti, c.tol));
    std::vector<SupportedFunction> probes{polynomial({0.5, {0.0, 1.0}, 1.0}, alg->carrier(), alg->carrier())};
    add_checks(r, u_relations_check(alg, probes, 1e-12, go), tag);
    json row;
    row["hbar"] = h;
    auto k = u_nilpotency(alg);
    row["nilpotency"] = k ? json(*k) : json(nullptr);
    per.push_back(row);
  }
  r.results["cylinders"] = per;
  return r;
}

Report cmd_poisson(const RunConfig& c) {
  Report r;
  BijectionFamily fam = family_from_json(c.family);
  auto hbars = hbars_or(c, {0.1, 0.01, 0.001});
  Coefficients f = coefficients_from_json(c.f, fam.carrier());
  Coefficients g = coefficients_from_json(c.g, fam.carrier());
  LimitReport lr = classical_limit_check(f, g, fam, hbars);
  json rows = json::array();
  r.header = {"hbar", "residual", "fitted_order", "commutator_error"};
  std::string order = lr.order ? fmt(*lr.order) : "";
  for (const auto& row : lr.rows) {
    rows.push_back({{"hbar", row.hbar}, {"residual", row.residual}, {"commutator_error", row.commutator_error}});
    r.rows.push_back({fmt(row.hbar), fmt(row.residual), order, fmt(row.commutator_error)});
  }
  r.results["rows"] = rows;
  r.results["order"] = lr.order ? json(*lr.order) : json(nullptr);
  r.results["exact"] = lr.exact;
  r.checks.push_back({"first-order residual is O(h)", lr.order ? std::abs(*lr.order - 1.0) : 0.0, 0.1, lr.pass,
                      lr.detail});
  if (!lr.rows.empty())
    r.checks.push_back(make_check("star commutator / (-i h) matches the bracket", lr.rows.back().commutator_error, 0.1,
                                  "at h=" + fmt(lr.rows.back().hbar)));
  return r;
}

Interval default_two_gen_interval(const RunConfig& c, double h) {
  if (!c.interval.empty()) return Interval::parse(c.interval);
  if (c.profile == "plane_plus" || c.profile == "plane_minus") return Interval::make(-0.5 * h, kInf, true, false);
  if (c.profile == "poincare") return Interval::closed(poincare_constants(h).rho0, 1.0);
  throw ConfigError("profile '" + c.profile + "' needs an explicit interval");
}

json boundary_json(const BoundaryReport& b) {
  json j;
  j["vacuous"] = b.vacuous;
  j["case"] = b.which;
  j["u0"] = b.u0;
  j["u1"] = b.u1;
  j["map_residual"] = b.map_residual;
  j["commutator_at_u0"] = b.comm_at_u0;
  j["anticommutator_at_u0"] = b.anti_at_u0;
  j["commutator_jump"] = b.comm_jump;
  j["anticommutator_jump"] = b.anti_jump;
  j["zero_at_u0"] = b.zero_at_u0;
  j["continuous_at_u1"] = b.continuous_at_u1;
  j["iff_holds"] = b.iff_holds;
  j["phi_at_u0"] = b.phi_at_u0;
  if (!b.detail.empty()) j["detail"] = b.detail;
  return j;
}

Report cmd_subalgebra(const RunConfig& c) {
  Report r;
  json per = json::array();
  for (double h : hbars_or(c, {0.1})) {
    TwoGenSetup s{CommutatorProfile::named(c.profile, c.profile_expr), h, default_two_gen_interval(c, h), std::nullopt};
    TwoGenModel m = build_two_gen(s);
    const std::string tag = "h=" + fmt(h) + ": ";
    TwoGenReport tr = two_gen_relations(m, c.tol, c.grid_size);
    add_checks(r, tr.checks, tag);
    add_checks(r, two_gen_equation_check(m, std::min(c.tol, 1e-10), c.grid_size), tag);
    SupportedFunction g = polynomial({0.0, 0.0, 1.0}, m.rho.J, m.rho.J);
    auto cg = commutator_with_diagonal(m, g, c.tol);
    cg.relation = tag + cg.relation;
    r.checks.push_back(cg);
    BoundaryReport b = boundary_continuity_check(m);
    json row;
    row["hbar"] = h;
    row["I"] = s.I.to_string();
    row["J1"] = m.alg->I(1).to_string();
    row["J-1"] = m.alg->I(-1).to_string();
    row["min_phi"] = tr.min_phi;
    row["jm1_commutator_sign"] = tr.jm1_commutator_sign;
    row["vanishing_on_j1_only"] = tr.j1_only_vanishing;
    row["vanishing_on_jm1_only"] = tr.jm1_only_vanishing;
    row["boundary"] = boundary_json(b);
    if (c.profile == "poincare") {
      PoincareConstants pc = poincare_constants(h);
      row["constants"] = {{"rho0", pc.rho0}, {"v", pc.v}, {"alpha_at_0", pc.alpha_at_0}, {"alpha_inv_rho0", pc.a_inv}};
      add_checks(r, pc.checks, tag);
    }
    per.push_back(row);
  }
  r.results["models"] = per;
  return r;
}

Report cmd_oracle(const RunConfig& c) {
  Report r;
  add_checks(r, oracle::exhaustive_suite(c.seed, c.instances, c.max_M));
  std::mt19937_64 rng(c.seed);
  json grids = json::array();
  for (double h : hbars_or(c, {0.25, 0.125})) {
    AlgebraPtr alg = make_cylinder(CylinderKind::Finite, Interval::parse(c.family.value("interval", "[0,1]")), h);
    int N = *alg->order_N() - 1;
    if (N < 1) throw ConfigError("hbar " + fmt(h) + " leaves no grid points");
    oracle::GridSample g = oracle::sample_interval_to_finite(alg, N);
    add_checks(r, oracle::compare_with_interval(alg, g, rng), "grid h=" + fmt(h) + ": ");
    grids.push_back({{"hbar", h}, {"points", g.points}});
  }
  r.results["grids"] = grids;
  return r;
}

Report dispatch(const RunConfig& c) {
  if (c.command == "orbit") return cmd_orbit(c);
  if (c.command == "rep") return cmd_rep(c);
  if (c.command == "algebra-check") return cmd_algebra_check(c);
  if (c.command == "poisson-limit") return cmd_poisson(c);
  if (c.command == "subalgebra") return cmd_subalgebra(c);
  if (c.command == "oracle") return cmd_oracle(c);
  throw ConfigError("no command given");
}

}  // namespace

Outcome error_outcome(const std::string& error, const json& context) {
  json j;
  j["error"] = error;
  j["context"] = context;
  return {2, j.dump(2) + "\n"};
}

Outcome run(const RunConfig& c) {
  Report r;
  try {
    r = dispatch(c);
  } catch (const ConfigError& e) {
    return error_outcome(e.what(), {{"command", c.command}, {"kind", "config"}});
  } catch (const ParseError& e) {
    return error_outcome(e.what(), {{"command", c.command}, {"kind", "parse"}});
  } catch (const Error& e) {
    return error_outcome(e.what(), {{"command", c.command}, {"kind", "domain"}});
  } catch (const json::exception& e) {
    return error_outcome(e.what(), {{"command", c.command}, {"kind", "descriptor"}});
  }
  bool pass = all_pass(r.checks);
  std::ostringstream os;
  if (c.format == "csv") {
    if (!r.header.empty()) {
      csv_row(os, r.header);
      for (const auto& row : r.rows) csv_row(os, row);
      os << "\n";
    }
    csv_row(os, {"relation", "residual", "tolerance", "pass", "detail"});
    for (const auto& ch : r.checks)
      csv_row(os, {ch.relation, fmt(ch.residual), fmt(ch.tolerance), ch.pass ? "true" : "false", ch.detail});
  } else {
    json j;
    j["command"] = c.command;
    j["config"] = to_json(c);
    j["results"] = r.results;
    j["checks"] = checks_json(r.checks);
    j["pass"] = pass;
    os << j.dump(2) << "\n";
  }
  return {pass ? 0 : 1, os.str()};
}

}  // namespace fuzzcyl::app
