#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dqd/config.hpp"

namespace dqd {

/// Subcommand names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Spec with every per-command default filled in; this is what gets
/// serialized into the provenance header.
struct ResolvedSpec {
  ExperimentSpec spec;
  Impurity impurity;
  Range eps_range;
  Range xi_range;
  double j_mhz = 242.0;
};

/// Throws ConfigError for an unknown command or invalid combination.
ResolvedSpec resolve_spec(const ExperimentSpec& spec);

/// '#'-prefixed lines recording the version and the resolved spec.
void write_provenance(std::ostream& out, const ResolvedSpec& r);

/// Runs one subcommand, writing CSV (or the validation report) to `out` and
/// diagnostics to `log`. Returns 0 on success, 1 when validation fails and
/// 3 when any sweep point failed. Calibration range errors propagate.
int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& log);

}  // namespace dqd
