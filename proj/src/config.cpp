#include "skewmix/config.hpp"

#include <cmath>
#include <fstream>

#include "skewmix/errors.hpp"

namespace skewmix {

using nlohmann::json;

namespace {

json with_defaults(const json& user) {
  json cfg = {
      {"map", {{"name", "doubling"}}},
      {"potential", {{"name", "srb"}}},
      {"group", {{"name", "torus"}, {"d", 1}}},
      {"tau", {{"name", "linear-angle"}, {"coefficient", 1.0}}},
      {"kappa_max", 20.0},
      {"collocation_n", 48},
      {"orbit_period_cap", 8},
      {"orbit_count_cap", 2097152},
      {"zeta_n_max", 12},
      {"t_grid", {{"min", 1e-3}, {"max", 1e-1}, {"count", 9}, {"spacing", "log"}}},
      {"n_range", {{"min", 1}, {"max", 8}}},
      {"tolerances",
       {{"trace", 1e-8}, {"heat", 1e-12}, {"correlation", 1e-6}, {"pressure", 1e-3}}},
      {"correlations", {{"use_trivial_second", true}, {"max_irreps", 1}}},
      {"output_dir", "out"},
  };
  cfg.merge_patch(user);
  return cfg;
}

std::vector<double> grid_values(const json& g) {
  const double lo = g.at("min").get<double>();
  const double hi = g.at("max").get<double>();
  const int count = g.at("count").get<int>();
  const std::string spacing = g.value("spacing", "log");
  if (!(lo > 0) || !(hi > lo) || count < 2) throw ConfigError("t_grid: invalid range");
  std::vector<double> v(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    v[static_cast<size_t>(i)] =
        spacing == "log" ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
  }
  return v;
}

}  // namespace

ExpandingMap make_map(const json& spec) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "doubling") return doubling_map();
  if (name == "linear") return linear_map(spec.value("k", 3));
  if (name == "perturbed-doubling") return perturbed_doubling(spec.value("epsilon", 0.05));
  throw ConfigError("unknown map: " + name);
}

Potential make_potential(const json& spec, const ExpandingMap& map) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "srb") return potential_srb(map);
  if (name == "zero") return potential_zero();
  if (name == "log2-sin") return potential_log2_sin(spec.value("amplitude", 0.1));
  throw ConfigError("unknown potential: " + name);
}

GroupModel make_group(const json& spec) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "torus") return GroupModel::torus(spec.value("d", 1));
  if (name == "su2") return GroupModel::su2();
  if (name == "so3") return GroupModel::so3();
  throw ConfigError("unknown group: " + name);
}

SkewFunction make_tau(const json& spec, const GroupModel& group) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "identity") return tau_identity(group);
  if (group.kind() == GroupKind::Torus) {
    if (name == "linear-angle") return tau_torus_linear(spec.value("coefficient", 1.0), group.dim());
    if (name == "constant-angle") {
      auto angles = spec.value("angles", std::vector<double>(static_cast<size_t>(group.dim()), 0.0));
      if (static_cast<int>(angles.size()) != group.dim())
        throw ConfigError("constant-angle: need one angle per torus dimension");
      return tau_torus_constant(angles);
    }
    if (name == "zero")
      return tau_torus_constant(std::vector<double>(static_cast<size_t>(group.dim()), 0.0));
    throw ConfigError("unknown torus tau: " + name);
  }
  if (name == "su2-one-direction") return tau_su2_one_direction(spec.value("coefficient", 1.0));
  if (name == "su2-two-direction")
    return tau_su2_two_direction(spec.value("c1", 1.0), spec.value("c2", 1.0));
  throw ConfigError("unknown su2 tau: " + name);
}

std::string config_hash(const json& j) {
  const std::string s = j.dump();
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return std::string(buf);
}

ExperimentConfig parse_config(const json& user) {
  json cfg;
  try {
    cfg = with_defaults(user);
    GroupModel group = make_group(cfg.at("group"));
    ExpandingMap map = make_map(cfg.at("map"));
    ExperimentConfig out{
        cfg,
        config_hash(cfg),
        map,
        make_potential(cfg.at("potential"), map),
        group,
        make_tau(cfg.at("tau"), group),
        cfg.at("kappa_max").get<double>(),
        cfg.at("collocation_n").get<int>(),
        cfg.at("orbit_period_cap").get<int>(),
        cfg.at("orbit_count_cap").get<long>(),
        cfg.at("zeta_n_max").get<int>(),
        grid_values(cfg.at("t_grid")),
        cfg.at("n_range").at("min").get<int>(),
        cfg.at("n_range").at("max").get<int>(),
        cfg.at("tolerances").at("trace").get<double>(),
        cfg.at("tolerances").at("heat").get<double>(),
        cfg.at("tolerances").at("correlation").get<double>(),
        cfg.at("tolerances").at("pressure").get<double>(),
        cfg.at("output_dir").get<std::string>(),
    };
    if (out.kappa_max < 0 || out.collocation_n < 4 || out.orbit_period_cap < 1 ||
        out.orbit_count_cap < 2 || out.zeta_n_max < 1 || out.n_min < 0 ||
        out.n_max < out.n_min)
      throw ConfigError("config: caps and ranges must be positive and ordered");
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

ExperimentConfig default_config() { return parse_config(json::object()); }

}  // namespace skewmix
