#pragma once

// Sweep and report drivers behind the wwlab command-line tool. Each command
// validates its configuration before computing, returns its table, and writes
// it as CSV when an output path is set.

#include "wwlab/classify.hpp"
#include "wwlab/grid_io.hpp"
#include "wwlab/phase_space.hpp"
#include "wwlab/tomography.hpp"
#include "wwlab/weyl_kernel.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wwlab {

/// Bad configuration detected before any computation (exit code 2).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// n points from lo to hi inclusive; n == 1 yields {lo}. n == 0 is a usage error.
std::vector<double> linear_grid(double lo, double hi, int n);

struct ScanConfig {
  DisplacedPairParams params = representational_params();
  double d_min = 0.0;
  double d_max = 2.0;
  int d_points = 41;
  Constants constants;
  unsigned jobs = 1;
  std::filesystem::path out;
};

/// Columns d, nu_min, nu_tilde_min, rs_pass, ppt_pass.
CsvTable cmd_scan_displacement(const ScanConfig& cfg);

struct PositivityConfig {
  DisplacedPairParams params = representational_params();
  double d_min = 0.0;
  double d_max = 2.0;
  int d_points = 5;
  GridSpec grid;
  bool allow_large = false;
  Constants constants;
  unsigned jobs = 1;
  std::filesystem::path out;
};

/// Columns d, lambda_min, trace, verdict.
CsvTable cmd_positivity_scan(const PositivityConfig& cfg);

struct FockSweepConfig {
  double p_min = 0.0;
  double p_max = 1.0;
  int p_points = 101;
  Constants constants;
  unsigned jobs = 1;
  std::filesystem::path out;
};

/// Columns p, lambda_min_pt, wigner_min, region.
CsvTable cmd_fock_sweep(const FockSweepConfig& cfg);

struct TomographyConfig {
  /// vacuum, fock1, mixture or file.
  std::string source = "vacuum";
  double p = 0.5;  // vacuum weight for source=mixture
  std::filesystem::path wigner_file;
  int angles = 90;
  int samples = 256;
  double lo = -6.0;
  double hi = 6.0;
  double cutoff = 1.0;
  Constants constants;
  unsigned jobs = 1;
  std::filesystem::path dump;  // reconstructed grid, flat binary
  std::filesystem::path out;   // one-row CSV report
};

struct TomographyReport {
  std::optional<double> linf_error;  // when a closed form exists
  double wigner_at_origin = 0.0;
  double wigner_min = 0.0;
  double wigner_integral = 0.0;
  OperatorReconstruction reconstruction;
};

TomographyReport cmd_tomography(const TomographyConfig& cfg, std::ostream& log);

struct ClassifyConfig {
  /// displaced-pair, beamsplitter or manual.
  std::string state = "manual";
  DisplacedPairParams params = hybrid_params(0.5);
  GridSpec grid;
  double p = 0.75;
  // Manual mode: "true", "false" or "unknown".
  std::string rs_pass = "unknown";
  std::string ppt_pass = "unknown";
  std::string operator_positive = "unknown";
  std::string wigner_nonnegative = "unknown";
  Constants constants;
  unsigned jobs = 1;
  std::filesystem::path out;
};

struct ClassifyReport {
  Diagnostics diagnostics;
  Region region = Region::Undetermined;
  std::string note;
};

/// Columns state, rs_pass, ppt_pass, operator_positive, wigner_nonnegative,
/// region, note.
ClassifyReport cmd_classify(const ClassifyConfig& cfg, std::ostream& log);

/// Diagnostics of a displaced pair: covariance RS/PPT, kernel verdict on the
/// given lattice, and a nonnegative Wigner function (it is a probability density).
Diagnostics displaced_pair_diagnostics(const DisplacedPairParams& p,
                                       const GridSpec& g, const Constants& c,
                                       unsigned jobs = 1);

/// Diagnostics of the beamsplitter output: PPT from the numeric
/// partial-transpose spectrum, positive operator, Wigner sign from the
/// closed-form minimum.
Diagnostics beamsplitter_diagnostics(double p, const Constants& c);

}  // namespace wwlab
