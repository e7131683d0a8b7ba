#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "finereg/regularity.hpp"
#include "finereg/stochastic.hpp"

namespace finereg {

// Scenario file: one JSON document describing the domain, grid, operator,
// boundary points, requested criteria, thresholds and outputs.  The schema is
// documented bit-exactly in docs/formats.md.
struct PointSpec {
  Pt y;
  std::optional<Pt> nu;
  std::optional<double> eta;
  double cone_slope = 1.0;
  std::optional<double> cone_height;  // default eta
  double cone_margin = 0.05;
};

struct MonteCarloSpec {
  std::size_t paths = 10000;
  double epsilon = 0.1;
  std::uint64_t seed = 1;
  std::size_t max_steps = 4000000;
  std::string h_function = "Ky";  // or "KyV"
};

struct Scenario {
  std::string name = "scenario";
  Domain domain = Domain::unit_disk();
  double h = 1.0 / 64.0;
  std::optional<Pt> x0;
  bool shortley_weller = false;
  std::vector<double> coefficients;  // per-axis; empty = identity
  PotentialSpec gamma = PotentialSpec::zero();
  PotentialSpec potential = PotentialSpec::zero();
  std::vector<PointSpec> points;
  std::vector<std::string> criteria;  // criterion ids
  CriterionConfig thresholds;
  std::optional<double> t_start;
  std::optional<MonteCarloSpec> monte_carlo;
  std::string report_name = "report.json";

  static Scenario parse_file(const std::string& path);
  static Scenario parse_json(const nlohmann::json& j);
};

PotentialSpec parse_potential(const nlohmann::json& j, const Domain& domain);
Cone parse_cone(const nlohmann::json& j);

struct RunResult {
  int exit_code = 0;              // 0 ok, 1 error, 2 consistency failure
  nlohmann::ordered_json report;  // also written to disk by run_scenario
};

// Executes the scenario and writes report JSON plus shells/rays CSVs under
// out_dir.  Never throws for criterion-level issues; scenario-level errors
// surface as exceptions in the caller (the CLI maps them to exit 1).
RunResult run_scenario(const Scenario& sc, const std::string& out_dir);

// Parameter sweep over {s | kappa | h}; scenarios run concurrently on
// `threads` workers, outputs merged in value order into sweep.csv.
int run_sweep(const Scenario& base, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir, int threads);

}  // namespace finereg
