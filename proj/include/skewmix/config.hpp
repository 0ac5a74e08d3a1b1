#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "skewmix/twisted.hpp"

namespace skewmix {

/// Fully resolved experiment description. Built from a JSON config file with
/// defaults applied; `raw` holds the effective config and `hash` its digest,
/// both echoed into every report.
struct ExperimentConfig {
  nlohmann::json raw;
  std::string hash;

  ExpandingMap map;
  Potential potential;
  GroupModel group;
  SkewFunction tau;

  double kappa_max = 20.0;
  int collocation_n = 48;
  int orbit_period_cap = 8;
  long orbit_count_cap = 1L << 21;
  int zeta_n_max = 12;
  std::vector<double> t_grid;
  int n_min = 1;
  int n_max = 8;
  double tol_trace = 1e-8;
  double tol_heat = 1e-12;
  double tol_correlation = 1e-6;
  double tol_pressure = 1e-3;
  std::string output_dir = "out";
};

ExpandingMap make_map(const nlohmann::json& spec);
Potential make_potential(const nlohmann::json& spec, const ExpandingMap& map);
GroupModel make_group(const nlohmann::json& spec);
SkewFunction make_tau(const nlohmann::json& spec, const GroupModel& group);

/// FNV-1a digest of the canonical (sorted-key) serialization.
std::string config_hash(const nlohmann::json& j);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);
/// The built-in default experiment (doubling map, SRB potential, circle skew).
ExperimentConfig default_config();

}  // namespace skewmix
