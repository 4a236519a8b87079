#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dqd/hamiltonian.hpp"
#include "dqd/model.hpp"

namespace dqd {

struct ValidateOptions {
  bool quick = false;           ///< smaller random samples and coarser grids
  bool corrupt_bessel = false;  ///< feed a perturbed i0e to the closed forms
  std::uint64_t seed = 2017;
  AssemblyMode mode = AssemblyMode::paper_literal;
};

struct SuiteResult {
  std::string name;
  std::vector<ValidationCheck> checks;
  bool passed = true;
  double seconds = 0.0;
};

/// Suites: oracle, potential, orthonormality, t0_eigenvector, sweet_spot,
/// trends. `base` supplies material constants and geometry.
std::vector<SuiteResult> run_validation(const DeviceParams& base, const ValidateOptions& options);

/// Closed-form vs quadrature comparison on `count` random parameter sets
/// drawn from a/a_B in [0.5, 3], eps in [0, 1], xi in [0, 1.5] meV and
/// |R_c| in [1.5a, 20a]. One check per element.
SuiteResult oracle_suite(const DeviceParams& base, int count, std::uint64_t seed,
                         double relative_tolerance, bool corrupt_bessel);

/// Prints failed checks and a per-suite summary line (no timings, so the
/// report is reproducible); returns overall pass.
bool print_report(std::ostream& out, const std::vector<SuiteResult>& suites);

/// i0e(x) (1 + 1e-3): a wrong but plausible Bessel for negative controls.
double corrupted_i0e(double x);

}  // namespace dqd
