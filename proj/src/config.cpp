#include "silevy/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace silevy {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double need_number(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(where + ": missing numeric '" + std::string(key) + "'");
  return j[key].get<double>();
}

void build_tree_nodes(const json& node, std::int32_t parent, std::vector<Domain::TreeNode>& out,
                      const std::string& where) {
  expect_keys(node, where, {"children", "length"});
  Domain::TreeNode tn;
  tn.parent = parent;
  tn.edge_len = node.value("length", 1.0);
  out.push_back(tn);
  const auto id = static_cast<std::int32_t>(out.size() - 1);
  if (node.contains("children")) {
    if (!node["children"].is_array()) throw ConfigError(where + ": children must be an array");
    int k = 0;
    for (const auto& child : node["children"])
      build_tree_nodes(child, id, out, where + ".children[" + std::to_string(k++) + "]");
  }
}

Space parse_space(const json& j) {
  if (!j.contains("domain")) throw ConfigError("config: missing 'domain'");
  const json& dj = j["domain"];
  Metric metric = Metric::symmdiff();
  if (j.contains("metric")) {
    expect_keys(j["metric"], "metric", {"type"});
    const std::string type = j["metric"].value("type", "symmdiff");
    if (type == "symmdiff")
      metric = Metric::symmdiff();
    else if (type == "hausdorff_tips")
      metric = Metric::hausdorff();
    else
      throw ConfigError("metric: unknown type '" + type + "'");
  }
  double scale = 1.0;
  if (j.contains("measure")) {
    expect_keys(j["measure"], "measure", {"type", "scale"});
    scale = j["measure"].value("scale", 1.0);
    if (!(scale > 0.0)) throw ConfigError("measure: scale must be > 0");
  }

  const std::string type = dj.value("type", "");
  if (type == "box") {
    expect_keys(dj, "domain", {"type", "p", "side"});
    const int p = static_cast<int>(need_number(dj, "domain", "p"));
    const double side = need_number(dj, "domain", "side");
    return Space{Domain::box(p, side), Measure::lebesgue(scale), metric};
  }
  if (type == "tree") {
    expect_keys(dj, "domain", {"type", "children"});
    std::vector<Domain::TreeNode> nodes;
    json root = json::object();
    root["children"] = dj.contains("children") ? dj["children"] : json::array();
    build_tree_nodes(root, -1, nodes, "domain");
    return Space{Domain::tree(std::move(nodes)), Measure::edge_length(scale), metric};
  }
  throw ConfigError("domain: type must be 'box' or 'tree'");
}

LevyMeasureSpec parse_nu(const json& j, const std::string& where) {
  const std::string type = j.value("type", "");
  if (type == "zero") {
    expect_keys(j, where, {"type"});
    return LevyMeasureSpec::zero();
  }
  if (type == "finite_atoms") {
    expect_keys(j, where, {"type", "atoms"});
    if (!j.contains("atoms") || !j["atoms"].is_array()) throw ConfigError(where + ": missing atoms array");
    std::vector<LevyMeasureSpec::Atom> atoms;
    for (const auto& a : j["atoms"]) {
      expect_keys(a, where + ".atoms[]", {"x", "rate"});
      atoms.push_back({need_number(a, where, "x"), need_number(a, where, "rate")});
    }
    return LevyMeasureSpec::finite_atoms(std::move(atoms));
  }
  if (type == "truncated_stable") {
    expect_keys(j, where, {"type", "alpha", "c"});
    return LevyMeasureSpec::truncated_stable(need_number(j, where, "alpha"),
                                             need_number(j, where, "c"));
  }
  if (type == "sum") {
    expect_keys(j, where, {"type", "components"});
    LevyMeasureSpec total = LevyMeasureSpec::zero();
    for (const auto& c : j["components"]) total = total.plus(parse_nu(c, where + ".components[]"));
    return total;
  }
  throw ConfigError(where + ": unknown Levy measure type '" + type + "'");
}

Point parse_point(const Space& s, const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  if (s.domain.is_box()) {
    if (static_cast<int>(j.size()) != s.domain.dim())
      throw ConfigError(where + ": point dimension mismatch");
    Point t;
    t.dim = s.domain.dim();
    for (int i = 0; i < t.dim; ++i) {
      if (!j[i].is_number()) throw ConfigError(where + ": coordinates must be numbers");
      t.x[i] = j[i].get<double>();
    }
    s.domain.require_point(t);
    return t;
  }
  // Tree: a Neveu word of 1-based child indices; [] is the root.
  std::int32_t cur = 0;
  for (const auto& step : j) {
    const int k = step.get<int>();
    const auto& children = s.domain.nodes()[cur].children;
    if (k < 1 || static_cast<std::size_t>(k) > children.size())
      throw ConfigError(where + ": tree path leaves the tree");
    cur = children[k - 1];
  }
  return Point::tree(cur);
}

Integrand parse_integrand(const Space& s, const json& j) {
  const std::string type = j.value("type", "");
  if (type == "constant") {
    expect_keys(j, "integrand", {"type", "c"});
    return Integrand::constant(need_number(j, "integrand", "c"));
  }
  if (type == "power_dist") {
    expect_keys(j, "integrand", {"type", "center", "exponent"});
    if (!j.contains("center")) throw ConfigError("integrand: power_dist needs a center");
    return Integrand::power_dist(parse_point(s, j["center"], "integrand.center"),
                                 need_number(j, "integrand", "exponent"));
  }
  if (type == "set_mixture") {
    expect_keys(j, "integrand", {"type", "center", "exponent", "exponent_off", "mask_level", "mask_cells"});
    GridMask mask;
    mask.level = static_cast<int>(need_number(j, "integrand", "mask_level"));
    for (const auto& v : j["mask_cells"]) mask.cells.push_back(v.get<int>() ? 1 : 0);
    return Integrand::set_mixture(parse_point(s, j["center"], "integrand.center"),
                                  need_number(j, "integrand", "exponent"),
                                  need_number(j, "integrand", "exponent_off"), std::move(mask));
  }
  if (type == "grid_table") {
    expect_keys(j, "integrand", {"type", "level", "values"});
    std::vector<double> values;
    for (const auto& v : j["values"]) values.push_back(v.get<double>());
    return Integrand::grid_table(static_cast<int>(need_number(j, "integrand", "level")),
                                 std::move(values));
  }
  throw ConfigError("integrand: unknown type '" + type + "'");
}

EstimatorConfig parse_estimator(const json& j) {
  EstimatorConfig e;
  expect_keys(j, "estimator",
              {"j_min", "j_max", "oversample", "drop_scales", "estimators", "pc_n_min", "pc_n_max",
               "jump_bound", "alpha_max", "alpha_step", "rho_min_log2", "rho_max_log2",
               "quad_level"});
  e.j_min = j.value("j_min", e.j_min);
  e.j_max = j.value("j_max", e.j_max);
  e.oversample = j.value("oversample", e.oversample);
  e.drop_scales = j.value("drop_scales", e.drop_scales);
  if (j.contains("estimators")) {
    e.estimators.clear();
    for (const auto& s : j["estimators"]) {
      const std::string name = s.get<std::string>();
      if (name != "holder" && name != "c" && name != "localized" && name != "pc")
        throw ConfigError("estimator: unknown estimator '" + name + "'");
      e.estimators.push_back(name);
    }
  }
  e.pc_n_min = j.value("pc_n_min", e.pc_n_min);
  e.pc_n_max = j.value("pc_n_max", e.pc_n_max);
  if (j.contains("jump_bound")) {
    const auto& jb = j["jump_bound"];
    expect_keys(jb, "estimator.jump_bound", {"rho_cut", "exact_qd", "n_max", "tol"});
    e.with_jump_bound = true;
    e.jump_bound.rho_cut = jb.value("rho_cut", e.jump_bound.rho_cut);
    e.jump_bound.exact_qd = jb.value("exact_qd", true);
    e.jump_bound.n_max = jb.value("n_max", e.jump_bound.n_max);
    e.jump_bound.tol = jb.value("tol", e.jump_bound.tol);
  }
  e.alpha_max = j.value("alpha_max", e.alpha_max);
  e.alpha_step = j.value("alpha_step", e.alpha_step);
  e.rho_min_log2 = j.value("rho_min_log2", e.rho_min_log2);
  e.rho_max_log2 = j.value("rho_max_log2", e.rho_max_log2);
  e.quad_level = j.value("quad_level", e.quad_level);
  if (e.j_max < e.j_min + 2) throw ConfigError("estimator: need at least 3 scales");
  return e;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
  expect_keys(j, "config",
              {"domain", "measure", "metric", "triplet", "integrand", "mesh_level", "truncation",
               "targets", "replications", "seed", "threads", "cancel_drift", "estimator",
               "test_function", "out"});
  ExperimentConfig cfg;
  cfg.space = parse_space(j);

  if (j.contains("triplet")) {
    const auto& tj = j["triplet"];
    expect_keys(tj, "triplet", {"b", "sigma2", "nu"});
    cfg.triplet.b = tj.value("b", 0.0);
    cfg.triplet.sigma2 = tj.value("sigma2", 0.0);
    if (cfg.triplet.sigma2 < 0.0) throw ConfigError("triplet: sigma2 must be >= 0");
    if (tj.contains("nu")) cfg.triplet.nu = parse_nu(tj["nu"], "triplet.nu");
  }

  if (j.contains("integrand")) cfg.integrand = parse_integrand(cfg.space, j["integrand"]);

  cfg.mesh_level = j.value("mesh_level", cfg.mesh_level);
  if (cfg.mesh_level < 1 || cfg.mesh_level > 24) throw ConfigError("mesh_level must be in [1,24]");

  if (j.contains("truncation")) {
    const auto& tr = j["truncation"];
    cfg.eps_ladder.clear();
    if (tr.is_number()) {
      cfg.eps_ladder.push_back(tr.get<double>());
    } else {
      expect_keys(tr, "truncation", {"ladder"});
      for (const auto& v : tr["ladder"]) cfg.eps_ladder.push_back(v.get<double>());
    }
    if (cfg.eps_ladder.empty()) throw ConfigError("truncation: empty ladder");
    for (double e : cfg.eps_ladder)
      if (!(e > 0.0) || !(e < 1.0)) throw ConfigError("truncation must be in (0,1)");
  }

  if (j.contains("targets")) {
    int k = 0;
    for (const auto& t : j["targets"])
      cfg.targets.push_back(parse_point(cfg.space, t, "targets[" + std::to_string(k++) + "]"));
  }

  cfg.replications = j.value("replications", cfg.replications);
  if (cfg.replications < 0) throw ConfigError("replications must be >= 0");
  cfg.seed = j.value("seed", cfg.seed);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.cancel_drift = j.value("cancel_drift", cfg.cancel_drift);
  if (j.contains("estimator")) cfg.estimator = parse_estimator(j["estimator"]);
  if (j.contains("test_function")) cfg.test_function = j["test_function"];
  cfg.out = j.value("out", cfg.out);

  // Expected truncated jump count guard (the working eps must keep paths tractable).
  if (!cfg.triplet.nu.is_zero()) {
    const CellGrid grid(cfg.space.domain, cfg.mesh_level);
    const double expected =
        grid.total_measure(cfg.space.measure.scale) * cfg.triplet.nu.mass_above(cfg.eps());
    if (expected > 1e7)
      throw ConfigError("expected jump count " + std::to_string(expected) +
                        " exceeds 1e7; raise the truncation");
  }

  cfg.echo = j;
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  return parse_config(j);
}

SetFunction make_test_function(const Space& s, const nlohmann::json& spec) {
  expect_keys(spec, "test_function", {"type", "center", "exponent"});
  const std::string type = spec.value("type", "");
  if (type == "measure") {
    return [s](const IndexSet& a) { return measure_of_A(s.domain, s.measure, a); };
  }
  if (type == "zero") {
    return [](const IndexSet&) { return 0.0; };
  }
  if (type == "distance_power") {
    if (!spec.contains("center")) throw ConfigError("test_function: distance_power needs a center");
    const Point c = parse_point(s, spec["center"], "test_function.center");
    const double a = spec.value("exponent", 1.0);
    return [s, c, a](const IndexSet& set) {
      if (set.is_empty()) return 0.0;
      const double d = d_T(s, set.tip, c);
      return a == 0.0 ? 1.0 : std::pow(d, a);
    };
  }
  throw ConfigError("test_function: unknown type '" + type + "'");
}

}  // namespace silevy
