#include <CLI11.hpp>
#include <iostream>

#include "finereg/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finereg - fine boundary regularity criteria for Schrodinger operators"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  int threads = 1;

  auto* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory");

  auto* sweep = app.add_subcommand("sweep", "run a scenario across parameter values");
  std::string param;
  std::string values_arg;
  sweep->add_option("scenario", scenario_path, "scenario JSON file")->required();
  sweep->add_option("--param", param, "one of s, kappa, h")->required();
  sweep->add_option("--values", values_arg, "comma-separated values")->required();
  sweep->add_option("--threads", threads, "concurrent scenarios");
  sweep->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const finereg::Scenario sc = finereg::Scenario::parse_file(scenario_path);
    if (run->parsed()) {
      const auto result = finereg::run_scenario(sc, out_dir);
      for (const auto& pj : result.report.at("points"))
        std::cout << "point " << pj.at("y").dump() << ": " << pj.at("consolidated").get<std::string>()
                  << (pj.at("consistent").get<bool>() ? "" : "  [CONSISTENCY FAILURE]") << "\n";
      return result.exit_code;
    }
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos < values_arg.size()) {
      const std::size_t comma = values_arg.find(',', pos);
      const std::string tok = values_arg.substr(pos, comma - pos);
      values.push_back(std::stod(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return finereg::run_sweep(sc, param, values, out_dir, threads);
  } catch (const finereg::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
