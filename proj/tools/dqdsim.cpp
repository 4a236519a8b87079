#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dqd/config.hpp"
#include "dqd/experiments.hpp"
#include "dqd/noise.hpp"

namespace {

dqd::Vec2 parse_position(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw dqd::ConfigError("--impurity expects X_nm,Y_nm, got '" + text + "'");
  return {dqd::parse_number(text.substr(0, comma), "impurity x"),
          dqd::parse_number(text.substr(comma + 1), "impurity y")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-quantum-dot exchange and charge-noise simulator"};
  app.set_version_flag("--version", std::string(DQD_VERSION));

  std::string command, config_path, out_path, scheme, eps_range, xi_range, impurity, mode;
  double charge = 0.0, j_mhz = 0.0;
  std::uint64_t seed = 0;
  bool quick = false, corrupt = false;

  std::string names;
  for (const auto& n : dqd::experiment_names()) names += (names.empty() ? "" : "|") + n;
  app.add_option("command", command, "Subcommand: " + names)
      ->required()
      ->check(CLI::IsMember(dqd::experiment_names()));
  auto* o_config = app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_path, "Output CSV path (default stdout)");
  auto* o_scheme = app.add_option("--scheme", scheme, "tilt|barrier")
                       ->check(CLI::IsMember({"tilt", "barrier"}));
  auto* o_eps = app.add_option("--eps-range", eps_range, "lo:hi:step in meV");
  auto* o_xi = app.add_option("--xi-range", xi_range, "lo:hi:step in meV");
  auto* o_imp = app.add_option("--impurity", impurity, "Impurity position X_nm,Y_nm");
  auto* o_charge = app.add_option("--charge-e", charge, "Impurity charge in units of e");
  auto* o_mode = app.add_option("--mode", mode, "paper|full")->check(CLI::IsMember({"paper", "full"}));
  auto* o_j = app.add_option("--J-mhz", j_mhz, "Matched exchange target in MHz");
  auto* o_seed = app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_flag("--quick", quick, "Coarser grids and smaller samples");
  app.add_flag("--corrupt-bessel", corrupt)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    dqd::ExperimentSpec spec;
    if (*o_config) dqd::load_config_file(config_path, spec);
    spec.command = command;
    spec.out_path = out_path;
    if (*o_scheme) spec.scheme = scheme;
    if (*o_eps) spec.eps_range = dqd::parse_range(eps_range);
    if (*o_xi) spec.xi_range = dqd::parse_range(xi_range);
    if (*o_imp) {
      const auto pos = parse_position(impurity);
      spec.impurity_x_nm = pos.x;
      spec.impurity_y_nm = pos.y;
    }
    if (*o_charge) spec.charge_e = charge;
    if (*o_mode) spec.mode = dqd::parse_mode(mode);
    if (*o_j) spec.j_mhz = j_mhz;
    if (*o_seed) spec.seed = seed;
    spec.quick = quick;
    spec.corrupt_bessel = corrupt;

    // Buffer so a failed run never leaves a truncated file behind.
    std::ostringstream buffer;
    const int status = dqd::run_experiment(spec, buffer, std::cerr);
    if (out_path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw dqd::ConfigError("cannot write '" + out_path + "'");
      file << buffer.str();
    }
    if (status != 0) std::cerr << "dqdsim: " << command << " finished with status " << status << '\n';
    return status;
  } catch (const dqd::CalibrationRangeError& e) {
    std::cerr << "dqdsim: calibration out of range: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "dqdsim: " << e.what() << '\n';
    return 2;
  }
}
