// wwlab: command-line driver for displacement sweeps, kernel positivity
// scans, Fock-state sweeps, simulated tomography and classification reports.
//
// Every option can also be given in an INI file passed with --config before
// the subcommand, one section per subcommand, e.g.
//
//   [scan-displacement]
//   s_q = 0.5
//   k_q = 0.3
//   d_points = 41
//
// Flags on the command line override values from the file.
//
// Exit codes: 0 success, 2 usage error, 1 runtime error.

#include "wwlab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, wwlab::Constants& c, unsigned& jobs,
                std::filesystem::path& out) {
  cmd->add_option("--hbar", c.hbar, "Reduced Planck constant")->capture_default_str();
  cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", out, "Output CSV path");
}

void add_pair_params(CLI::App* cmd, wwlab::DisplacedPairParams& p, bool with_d) {
  cmd->add_option("--s_q", p.s_q, "Intra-mode position variance")->capture_default_str();
  cmd->add_option("--s_p", p.s_p, "Intra-mode momentum variance")->capture_default_str();
  cmd->add_option("--k_q", p.k_q, "Inter-mode position correlation")->capture_default_str();
  cmd->add_option("--k_p", p.k_p, "Inter-mode momentum correlation")->capture_default_str();
  if (with_d) cmd->add_option("--d", p.d, "Displacement")->capture_default_str();
}

void add_grid(CLI::App* cmd, wwlab::GridSpec& g) {
  cmd->add_option("--grid_lo", g.lo, "Lattice lower bound")->capture_default_str();
  cmd->add_option("--grid_hi", g.hi, "Lattice upper bound")->capture_default_str();
  cmd->add_option("--grid_n", g.n, "Lattice points per axis")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner-Weyl phase-space diagnostics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with one section per subcommand");

  wwlab::ScanConfig scan;
  auto* scan_cmd = app.add_subcommand("scan-displacement",
                                      "Symplectic spectra of the displaced pair vs d");
  add_pair_params(scan_cmd, scan.params, false);
  scan_cmd->add_option("--d_min", scan.d_min)->capture_default_str();
  scan_cmd->add_option("--d_max", scan.d_max)->capture_default_str();
  scan_cmd->add_option("--d_points", scan.d_points)->capture_default_str();
  add_common(scan_cmd, scan.constants, scan.jobs, scan.out);

  wwlab::PositivityConfig pos;
  auto* pos_cmd = app.add_subcommand("positivity-scan",
                                     "Smallest Weyl-kernel eigenvalue vs d");
  add_pair_params(pos_cmd, pos.params, false);
  pos_cmd->add_option("--d_min", pos.d_min)->capture_default_str();
  pos_cmd->add_option("--d_max", pos.d_max)->capture_default_str();
  pos_cmd->add_option("--d_points", pos.d_points)->capture_default_str();
  add_grid(pos_cmd, pos.grid);
  pos_cmd->add_flag("--allow-large", pos.allow_large,
                    "Permit kernels above the 10^4 dimension guard");
  add_common(pos_cmd, pos.constants, pos.jobs, pos.out);

  wwlab::FockSweepConfig fock;
  auto* fock_cmd = app.add_subcommand("fock-sweep",
                                      "Beamsplitter state diagnostics vs p");
  fock_cmd->add_option("--p_min", fock.p_min)->capture_default_str();
  fock_cmd->add_option("--p_max", fock.p_max)->capture_default_str();
  fock_cmd->add_option("--p_points", fock.p_points)->capture_default_str();
  add_common(fock_cmd, fock.constants, fock.jobs, fock.out);

  wwlab::TomographyConfig tomo;
  auto* tomo_cmd = app.add_subcommand("tomography",
                                      "Simulated homodyne reconstruction and positivity");
  tomo_cmd->add_option("--source", tomo.source, "vacuum, fock1, mixture or file")
      ->capture_default_str();
  tomo_cmd->add_option("--p", tomo.p, "Vacuum weight for source=mixture")
      ->capture_default_str();
  tomo_cmd->add_option("--wigner-file", tomo.wigner_file, "Flat binary Wigner grid");
  tomo_cmd->add_option("--angles", tomo.angles)->capture_default_str();
  tomo_cmd->add_option("--samples", tomo.samples)->capture_default_str();
  tomo_cmd->add_option("--lo", tomo.lo)->capture_default_str();
  tomo_cmd->add_option("--hi", tomo.hi)->capture_default_str();
  tomo_cmd->add_option("--cutoff", tomo.cutoff, "Ramp cutoff, fraction of Nyquist")
      ->capture_default_str();
  tomo_cmd->add_option("--dump", tomo.dump, "Write the reconstructed grid here");
  add_common(tomo_cmd, tomo.constants, tomo.jobs, tomo.out);

  wwlab::ClassifyConfig cls;
  auto* cls_cmd = app.add_subcommand("classify", "Region label for a state");
  cls_cmd->add_option("--state", cls.state, "displaced-pair, beamsplitter or manual")
      ->capture_default_str();
  add_pair_params(cls_cmd, cls.params, true);
  add_grid(cls_cmd, cls.grid);
  cls_cmd->add_option("--p", cls.p, "Vacuum weight for state=beamsplitter")
      ->capture_default_str();
  cls_cmd->add_option("--rs-pass", cls.rs_pass, "true|false (manual)");
  cls_cmd->add_option("--ppt-pass", cls.ppt_pass, "true|false (manual)");
  cls_cmd->add_option("--operator-positive", cls.operator_positive,
                      "true|false|unknown (manual)");
  cls_cmd->add_option("--wigner-nonnegative", cls.wigner_nonnegative,
                      "true|false|unknown (manual)");
  add_common(cls_cmd, cls.constants, cls.jobs, cls.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*scan_cmd) {
      const auto t = wwlab::cmd_scan_displacement(scan);
      if (scan.out.empty()) std::cout << wwlab::to_csv_string(t);
    } else if (*pos_cmd) {
      const auto t = wwlab::cmd_positivity_scan(pos);
      if (pos.out.empty()) std::cout << wwlab::to_csv_string(t);
    } else if (*fock_cmd) {
      const auto t = wwlab::cmd_fock_sweep(fock);
      if (fock.out.empty()) std::cout << wwlab::to_csv_string(t);
    } else if (*tomo_cmd) {
      wwlab::cmd_tomography(tomo, std::cout);
    } else if (*cls_cmd) {
      wwlab::cmd_classify(cls, std::cout);
    }
  } catch (const wwlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
