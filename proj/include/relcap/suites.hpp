#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcap/potential.hpp"
#include "relcap/report.hpp"

namespace relcap {

enum class SuiteKind {
  kMonotonicity,
  kChoquet,
  kPolarization,
  kComposition,
  kCrSymmetrization,
  kSteiner,
  kMarcus,
  kAveraging,
  kSchwarzian,
  kTransport,
  kHcapRegression,
  kRelcapRegression,
};

const std::vector<SuiteKind>& all_suites();
std::string suite_name(SuiteKind kind);
SuiteKind parse_suite(const std::string& name);

struct SuiteConfig {
  SuiteKind suite = SuiteKind::kMonotonicity;
  int trials = 100;
  std::uint64_t seed = 1;
  std::int64_t samples = 20000;  // walks per rung or height
  int mask_cells = 128;          // Cartesian grids are mask_cells^2
  int polar_rings = 128;
  int polar_sectors = 256;
  double tolerance = 3.0;  // k in slack >= -k stderr
  /// Heights for the regression rows of hcap-regression.
  std::vector<double> regression_heights{5.0, 10.0, 20.0};
  WalkOptions walk;

  void validate() const;
};

/// Rows are produced in case order; every stochastic input is derived from
/// config.seed, so equal configs give equal reports. Errors inside a case
/// become FLAG rows carrying the message in `note`.
Report run_suite(const SuiteConfig& config);

}  // namespace relcap
