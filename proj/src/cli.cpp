#include "skewmix/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewmix/config.hpp"
#include "skewmix/correlations.hpp"
#include "skewmix/errors.hpp"
#include "skewmix/heataverage.hpp"
#include "skewmix/parallel.hpp"
#include "skewmix/version.hpp"

namespace skewmix {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliContext {
  ExperimentConfig cfg;
  std::string out_dir;
  int threads = 1;
  std::string format = "json";
};

json report_header(const CliContext& ctx) {
  return {{"version", kVersion}, {"config_hash", ctx.cfg.hash}};
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << content;
}

json complex_list(const std::vector<std::complex<double>>& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

std::string irrep_tag(const IrrepInfo& irrep) {
  std::string s;
  for (size_t i = 0; i < irrep.id.size(); ++i) {
    if (i) s += "_";
    s += std::to_string(irrep.id[i]);
  }
  return s;
}

/// Summary serialization honoring --format: JSON object or flat key,value CSV.
void write_summary(const CliContext& ctx, const std::string& name, const json& body) {
  const fs::path dir(ctx.out_dir);
  if (ctx.format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = body.begin(); it != body.end(); ++it) {
      os << it.key() << ',' << it.value().dump() << '\n';
    }
    write_file(dir / (name + ".csv"), os.str());
  } else {
    write_file(dir / (name + ".json"), body.dump(2) + "\n");
  }
}

struct PreparedThermo {
  RpfData rpf;
  Potential phi_norm;
  RpfData rpf2;  // for the doubled potential
};

PreparedThermo prepare_thermo(const ExperimentConfig& cfg) {
  RpfData rpf = rpf_solve(cfg.map, cfg.potential, cfg.collocation_n);
  Potential phi_norm = normalize_potential(cfg.potential, rpf);
  RpfData rpf2 = rpf_solve(cfg.map, potential_scaled(phi_norm, 2.0), cfg.collocation_n);
  return {std::move(rpf), std::move(phi_norm), std::move(rpf2)};
}

int cmd_pressure(const CliContext& ctx) {
  const auto& cfg = ctx.cfg;
  json body = report_header(ctx);

  const RpfData rpf = rpf_solve(cfg.map, cfg.potential, cfg.collocation_n);
  const int n_orbit = std::min(cfg.orbit_period_cap, 12);
  const double p_orbit =
      pressure_from_orbits(cfg.map, cfg.potential.eval, n_orbit, cfg.orbit_count_cap);
  const Potential phi2 = potential_scaled(cfg.potential, 2.0);
  const RpfData rpf2 = rpf_solve(cfg.map, phi2, cfg.collocation_n);
  const double p2_orbit = pressure_from_orbits(cfg.map, phi2.eval, n_orbit, cfg.orbit_count_cap);

  body["P_phi"] = {{"rpf", rpf.pressure},
                   {"orbit", p_orbit},
                   {"diff", std::abs(rpf.pressure - p_orbit)}};
  body["P_2phi"] = {{"rpf", rpf2.pressure},
                    {"orbit", p2_orbit},
                    {"diff", std::abs(rpf2.pressure - p2_orbit)}};
  body["orbit_period"] = n_orbit;
  write_summary(ctx, "pressure", body);

  std::cout << "P(phi):  rpf " << rpf.pressure << "  orbit " << p_orbit << "  diff "
            << std::abs(rpf.pressure - p_orbit) << "\n";
  std::cout << "P(2phi): rpf " << rpf2.pressure << "  orbit " << p2_orbit << "  diff "
            << std::abs(rpf2.pressure - p2_orbit) << "\n";

  if (std::abs(rpf.pressure - p_orbit) > cfg.tol_pressure ||
      std::abs(rpf2.pressure - p2_orbit) > cfg.tol_pressure)
    throw NumericalError("pressure routes disagree beyond tolerance");
  return 0;
}

int cmd_spectrum(const CliContext& ctx) {
  const auto& cfg = ctx.cfg;
  const PreparedThermo th = prepare_thermo(cfg);
  const auto irreps = cfg.group.irreps_below(cfg.kappa_max);
  const double p2 = th.rpf2.pressure;

  const auto series = make_zeta_series_batch(cfg.map, th.phi_norm, cfg.tau, irreps,
                                             cfg.zeta_n_max, cfg.orbit_count_cap);

  std::vector<SpectrumResult> spectra(irreps.size());
  parallel_for(static_cast<int>(irreps.size()), ctx.threads, [&](int i) {
    const TwistedOperator op = build_twisted_matrix(cfg.map, th.phi_norm, th.rpf, cfg.tau,
                                                    irreps[static_cast<size_t>(i)],
                                                    cfg.collocation_n);
    spectra[static_cast<size_t>(i)] = eigenvalues(op);
  });

  json radii = json::array();
  double worst_radius = 0.0;
  for (size_t i = 0; i < irreps.size(); ++i) {
    const auto& spec = spectra[i];
    json rec = {{"group", cfg.group.name()},
                {"irrep_id", irreps[i].id},
                {"kappa", irreps[i].kappa},
                {"N", cfg.collocation_n},
                {"eigenvalues", complex_list(spec.eigenvalues)},
                {"traces", complex_list(series[i].traces)}};
    write_file(fs::path(ctx.out_dir) / "spectrum" / ("irrep_" + irrep_tag(irreps[i]) + ".json"),
               rec.dump(2) + "\n");
    const double radius = std::abs(spec.eigenvalues.front());
    worst_radius = std::max(worst_radius, radius);
    radii.push_back({{"irrep_id", irreps[i].id},
                     {"kappa", irreps[i].kappa},
                     {"spectral_radius", radius},
                     {"trusted", spec.trusted_count}});
  }

  json body = report_header(ctx);
  body["irreps"] = radii;
  body["P_2phi"] = p2;
  body["conjecture_band"] = std::exp(0.5 * p2);
  body["threshold"] = std::exp(gamma_constant(cfg.group) * p2);
  if (cfg.group.kind() != GroupKind::Torus)
    body["threshold_improved"] = std::exp(gamma_constant(cfg.group, true) * p2);
  body["max_spectral_radius"] = worst_radius;
  write_summary(ctx, "spectrum_summary", body);

  std::cout << "spectra for " << irreps.size() << " irreps written; max radius "
            << worst_radius << "\n";
  if (worst_radius > 1.0 + 1e-8)
    throw NumericalError("spectral radius above 1 + 1e-8");
  return 0;
}

int cmd_traces(const CliContext& ctx) {
  const auto& cfg = ctx.cfg;
  const PreparedThermo th = prepare_thermo(cfg);
  const auto irreps = cfg.group.irreps_below(cfg.kappa_max);
  const int n_max = std::min(cfg.n_max, cfg.orbit_period_cap);

  const auto series = make_zeta_series_batch(cfg.map, th.phi_norm, cfg.tau, irreps,
                                             std::max(cfg.zeta_n_max, n_max),
                                             cfg.orbit_count_cap);

  std::vector<std::vector<std::complex<double>>> matrix_traces(irreps.size());
  parallel_for(static_cast<int>(irreps.size()), ctx.threads, [&](int i) {
    const TwistedOperator op = build_twisted_matrix(cfg.map, th.phi_norm, th.rpf, cfg.tau,
                                                    irreps[static_cast<size_t>(i)],
                                                    cfg.collocation_n);
    Eigen::MatrixXcd power = op.matrix;
    for (int n = 1; n <= n_max; ++n) {
      if (n > 1) power = power * op.matrix;
      matrix_traces[static_cast<size_t>(i)].push_back(
          static_cast<double>(op.irrep.dim) * power.trace());
    }
  });

  std::ostringstream csv;
  csv << "irrep,n,periodic_re,periodic_im,matrix_re,matrix_im,contour_re,contour_im,"
         "diff_matrix,diff_contour\n";
  csv.precision(17);
  double worst = 0.0;
  for (size_t i = 0; i < irreps.size(); ++i) {
    const double lead_est = 0.75 / series[i].radius_hint;
    const double r = 0.5 / std::max(lead_est, 1e-6);
    for (int n = 1; n <= n_max; ++n) {
      const auto periodic = series[i].traces[static_cast<size_t>(n - 1)];
      const auto matrix = matrix_traces[i][static_cast<size_t>(n - 1)];
      const auto contour = contour_extract_W(series[i], n, r);
      const double dm = std::abs(periodic - matrix) / (1.0 + std::abs(periodic));
      const double dc = std::abs(periodic - contour) / (1.0 + std::abs(periodic));
      worst = std::max(worst, std::max(dm, dc));
      csv << irrep_tag(irreps[i]) << ',' << n << ',' << periodic.real() << ','
          << periodic.imag() << ',' << matrix.real() << ',' << matrix.imag() << ','
          << contour.real() << ',' << contour.imag() << ',' << dm << ',' << dc << '\n';
    }
  }
  write_file(fs::path(ctx.out_dir) / "traces.csv", csv.str());

  json body = report_header(ctx);
  body["irrep_count"] = irreps.size();
  body["n_max"] = n_max;
  body["max_discrepancy"] = worst;
  write_summary(ctx, "traces_summary", body);

  std::cout << "trace table written; max relative discrepancy " << worst << "\n";
  if (worst > cfg.tol_trace) throw NumericalError("trace routes disagree beyond tolerance");
  return 0;
}

int cmd_correlations(const CliContext& ctx) {
  const auto& cfg = ctx.cfg;
  const PreparedThermo th = prepare_thermo(cfg);
  const double p2 = th.rpf2.pressure;

  // Observable selection: conjugate-representation pruning keeps q > 0 on the
  // torus; every SU(2) irrep is self-conjugate.
  std::vector<std::pair<IrrepInfo, int>> picks;  // irrep, eigen index
  if (cfg.raw["correlations"].value("use_trivial_second", true)) {
    picks.push_back({cfg.group.trivial_irrep(), 1});
  }
  const int max_irreps = cfg.raw["correlations"].value("max_irreps", 1);
  int taken = 0;
  for (const auto& irrep : cfg.group.irreps_below(cfg.kappa_max)) {
    if (irrep.trivial()) continue;
    if (cfg.group.kind() == GroupKind::Torus) {
      bool positive = irrep.id[0] > 0 || (irrep.id[0] == 0 && irrep.id.size() > 1 && irrep.id[1] > 0);
      if (!positive) continue;
    }
    if (taken++ >= max_irreps) break;
    picks.push_back({irrep, 0});
  }

  const double threshold =
      std::exp(gamma_constant(cfg.group,
                              cfg.group.kind() != GroupKind::Torus) * p2);

  json obs_reports = json::array();
  double worst = 0.0;
  for (const auto& [irrep, index] : picks) {
    const EigenObservable eo = eigen_observable(cfg.map, th.phi_norm, th.rpf, cfg.tau, irrep,
                                                cfg.collocation_n, index);
    const int resolution = correlation_group_resolution(cfg.group, {irrep});
    const int n_max = cfg.n_max;

    CorrelationSeries direct{{}, "direct-quadrature", eo.F.description};
    CorrelationSeries predicted{{}, "eigen-formula", eo.F.description};
    for (int n = 1; n <= n_max; ++n) {
      direct.values.push_back(correlation_direct(eo.F, eo.F, n, cfg.map, th.phi_norm, th.rpf,
                                                 cfg.tau, resolution,
                                                 std::min(n, 12)));
      predicted.values.push_back(correlation_predicted({{1.0, &eo}}, n));
      const double d = std::abs(direct.values.back() - predicted.values.back()) /
                       (1.0 + std::abs(predicted.values.back()));
      worst = std::max(worst, d);
    }

    const std::string tag = irrep_tag(irrep) + "_" + std::to_string(index);
    {
      std::ostringstream os;
      write_correlation_csv(os, direct);
      write_file(fs::path(ctx.out_dir) / "correlations" / ("direct_" + tag + ".csv"), os.str());
    }
    {
      std::ostringstream os;
      write_correlation_csv(os, predicted);
      write_file(fs::path(ctx.out_dir) / "correlations" / ("predicted_" + tag + ".csv"),
                 os.str());
    }
    {
      std::ostringstream os;
      write_correlation_plotdata(os, direct);
      write_file(fs::path(ctx.out_dir) / "correlations" / ("plot_" + tag + ".csv"), os.str());
    }

    const double fg_ratio = std::abs(eo.FG) / eo.F2;
    const auto times =
        dirichlet_time_subsequence({std::arg(eo.lambda)}, fg_ratio, n_max);
    double estimate = 0.0;
    estimate = decay_rate_estimate(direct, times);

    json rec = {{"irrep_id", irrep.id},
                {"eigen_index", index},
                {"lambda", {eo.lambda.real(), eo.lambda.imag()}},
                {"abs_lambda", std::abs(eo.lambda)},
                {"F2", eo.F2},
                {"FG", eo.FG},
                {"subsequence", times},
                {"decay_estimate", estimate},
                {"direct", direct.values},
                {"predicted", predicted.values}};
    obs_reports.push_back(rec);
    write_file(fs::path(ctx.out_dir) / "correlations" / ("series_" + tag + ".json"),
               rec.dump(2) + "\n");

    std::cout << "observable " << eo.F.description << ": |lambda| = " << std::abs(eo.lambda)
              << ", decay estimate " << estimate << ", threshold " << threshold << "\n";
  }

  json body = report_header(ctx);
  body["observables"] = obs_reports;
  body["threshold"] = threshold;
  body["P_2phi"] = p2;
  body["max_two_route_discrepancy"] = worst;
  write_summary(ctx, "correlations_summary", body);

  if (worst > cfg.tol_correlation)
    throw NumericalError("correlation routes disagree beyond tolerance");
  return 0;
}

int cmd_heataverage(const CliContext& ctx) {
  const auto& cfg = ctx.cfg;
  const RpfData rpf = rpf_solve(cfg.map, cfg.potential, cfg.collocation_n);
  const Potential phi_norm = normalize_potential(cfg.potential, rpf);

  // Fit the bound constant on the odd-index t values, verify on the rest.
  std::vector<double> fit_ts, verify_ts;
  for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
    (i % 2 == 0 ? fit_ts : verify_ts).push_back(cfg.t_grid[i]);
  }
  std::vector<int> ns;
  for (int n = std::max(1, cfg.n_min); n <= cfg.n_max; ++n) ns.push_back(n);

  const double A = fit_lower_bound_A(cfg.map, phi_norm, cfg.tau, cfg.group, fit_ts, ns,
                                     cfg.tol_heat, cfg.orbit_count_cap);

  std::vector<AverageReport> all_cells(cfg.t_grid.size() * ns.size());
  parallel_for(static_cast<int>(cfg.t_grid.size()), ctx.threads, [&](int i) {
    for (size_t j = 0; j < ns.size(); ++j) {
      all_cells[static_cast<size_t>(i) * ns.size() + j] =
          S_sum(cfg.map, phi_norm, cfg.tau, cfg.group, cfg.t_grid[static_cast<size_t>(i)],
                ns[j], cfg.tol_heat, A, cfg.orbit_count_cap);
    }
  });

  std::vector<AverageReport> verify_cells;
  for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
    if (i % 2 == 1) {
      for (size_t j = 0; j < ns.size(); ++j)
        verify_cells.push_back(all_cells[i * ns.size() + j]);
    }
  }
  const MarginReport margin = diagonal_lower_bound_check(verify_cells);

  {
    std::ostringstream os;
    write_average_csv(os, all_cells);
    write_file(fs::path(ctx.out_dir) / "heataverage.csv", os.str());
  }

  const std::vector<double> t_desc(cfg.t_grid.rbegin(), cfg.t_grid.rend());
  const double beta = beta_exponent_fit(cfg.group, t_desc);
  const bool improved = cfg.group.kind() != GroupKind::Torus;
  const ContradictionReport contra =
      contradiction_scheme(cfg.map, phi_norm, cfg.tau, cfg.group, 0.5, 0.01,
                           std::min(cfg.orbit_period_cap, 12), cfg.orbit_count_cap);

  json body = report_header(ctx);
  body["A_fitted"] = A;
  body["worst_margin"] = margin.worst_margin;
  body["margin_ok"] = margin.ok;
  body["beta_fit"] = beta;
  body["gamma"] = gamma_constant(cfg.group, improved);
  body["P_2phi"] = contra.pressure2;
  body["decay_threshold"] = contra.threshold;
  write_summary(ctx, "heataverage_summary", body);

  std::cout << "A = " << A << ", worst margin " << margin.worst_margin << ", beta " << beta
            << ", threshold " << contra.threshold << "\n";
  if (!margin.ok) throw NumericalError("diagonal lower bound margin negative");
  return 0;
}

int cmd_gamma_table(const CliContext& ctx) {
  json rows = json::array();
  const auto add = [&](const GroupModel& g) {
    json row = {{"group", g.name()},
                {"dim", g.dim()},
                {"rank", g.rank()},
                {"gamma_default", gamma_constant(g)}};
    if (g.kind() != GroupKind::Torus) row["gamma_improved"] = gamma_constant(g, true);
    rows.push_back(row);
    std::cout << g.name() << ": gamma = " << gamma_constant(g);
    if (g.kind() != GroupKind::Torus) std::cout << " (improved " << gamma_constant(g, true) << ")";
    std::cout << "\n";
  };
  add(GroupModel::torus(1));
  add(GroupModel::torus(2));
  add(GroupModel::su2());
  add(GroupModel::so3());

  json body = report_header(ctx);
  body["table"] = rows;
  write_summary(ctx, "gamma_table", body);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"numerical toolkit for compact-group skew extensions of expanding maps"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format = "json";
  int threads = 1;
  long seed = 0;
  app.add_option("--config", config_path, "config file (JSON)");
  app.add_option("--out", out_dir, "output directory (default from config)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "reserved");
  app.add_option("--format", format, "summary format")->check(CLI::IsMember({"json", "csv"}));

  auto* pressure = app.add_subcommand("pressure", "pressure by both routes");
  auto* spectrum = app.add_subcommand("spectrum", "twisted spectra per irrep");
  auto* traces = app.add_subcommand("traces", "orbit vs matrix vs contour traces");
  auto* correlations = app.add_subcommand("correlations", "two-route correlation series");
  auto* heataverage = app.add_subcommand("heataverage", "heat-averaged sums and bounds");
  auto* gamma_table = app.add_subcommand("gamma-table", "decay exponents per group");

  std::vector<const char*> argv;
  argv.push_back("skewmix");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      (void)app.exit(e);
      return 0;  // --help
    }
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  }

  try {
    CliContext ctx{config_path.empty() ? default_config() : load_config_file(config_path),
                   "", threads, format};
    ctx.out_dir = out_dir.empty() ? ctx.cfg.output_dir : out_dir;

    if (pressure->parsed()) return cmd_pressure(ctx);
    if (spectrum->parsed()) return cmd_spectrum(ctx);
    if (traces->parsed()) return cmd_traces(ctx);
    if (correlations->parsed()) return cmd_correlations(ctx);
    if (heataverage->parsed()) return cmd_heataverage(ctx);
    if (gamma_table->parsed()) return cmd_gamma_table(ctx);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical check failed: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace skewmix
