#include "wwlab/commands.hpp"

#include "wwlab/fock.hpp"
#include "wwlab/parallel.hpp"
#include "wwlab/symplectic.hpp"

#include <cmath>
#include <functional>

namespace wwlab {

namespace {

// Pass threshold for the 4x4 partial-transpose spectrum and the Wigner sign.
constexpr double kSignSlack = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

// Re-raise module validation failures as usage errors.
template <typename Fn>
void validated(Fn&& fn) {
  try {
    fn();
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
}

void maybe_write(const std::filesystem::path& out, const CsvTable& table) {
  if (!out.empty()) write_csv(out, table);
}

std::optional<bool> parse_tristate(const std::string& name, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  if (v == "unknown") return std::nullopt;
  throw UsageError(name + " must be true, false or unknown");
}

std::string format_tristate(const std::optional<bool>& v) {
  return v ? format_bool(*v) : "unknown";
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int n) {
  require(n >= 1, "grid needs at least one point");
  require(std::isfinite(lo) && std::isfinite(hi), "grid bounds must be finite");
  if (n == 1) return {lo};
  require(lo <= hi, "grid requires lo <= hi");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

CsvTable cmd_scan_displacement(const ScanConfig& cfg) {
  std::vector<double> grid;
  validated([&] {
    cfg.constants.validate();
    cfg.params.validate();
    grid = linear_grid(cfg.d_min, cfg.d_max, cfg.d_points);
    require(grid.front() >= 0.0, "displacements must be nonnegative");
  });
  const auto rows = scan_displacement(cfg.params, grid, cfg.constants, cfg.jobs);
  CsvTable t;
  t.header = {"d", "nu_min", "nu_tilde_min", "rs_pass", "ppt_pass"};
  for (const auto& r : rows) {
    t.rows.push_back({format_double(r.d), format_double(r.nu_min),
                      format_double(r.nu_tilde_min), format_bool(r.rs_pass),
                      format_bool(r.ppt_pass)});
  }
  maybe_write(cfg.out, t);
  return t;
}

CsvTable cmd_positivity_scan(const PositivityConfig& cfg) {
  std::vector<double> grid;
  validated([&] {
    cfg.constants.validate();
    cfg.params.validate();
    cfg.grid.validate();
    require(cfg.grid.dims == 2, "positivity scan needs a two-axis grid (dims = 2)");
    if (cfg.grid.matrix_dim() > kDefaultMaxKernelDim && !cfg.allow_large) {
      const int suggested = static_cast<int>(std::sqrt(double(kDefaultMaxKernelDim)));
      throw UsageError("kernel dimension " + std::to_string(cfg.grid.matrix_dim()) +
                       " exceeds " + std::to_string(kDefaultMaxKernelDim) +
                       "; use n <= " + std::to_string(suggested) +
                       " or pass --allow-large");
    }
    grid = linear_grid(cfg.d_min, cfg.d_max, cfg.d_points);
    require(grid.front() >= 0.0, "displacements must be nonnegative");
  });
  KernelBuildOptions opts;
  opts.allow_large = cfg.allow_large;
  opts.jobs = cfg.jobs;
  const auto rows = positivity_scan(cfg.params, grid, cfg.grid, cfg.constants, opts);
  CsvTable t;
  t.header = {"d", "lambda_min", "trace", "verdict"};
  for (const auto& r : rows) {
    t.rows.push_back({format_double(r.d), format_double(r.lambda_min),
                      format_double(r.trace), to_string(r.verdict)});
  }
  maybe_write(cfg.out, t);
  return t;
}

Diagnostics displaced_pair_diagnostics(const DisplacedPairParams& p,
                                       const GridSpec& g, const Constants& c,
                                       unsigned jobs) {
  const auto report = criteria_report(mixture_covariance(make_displaced_pair(p)), c);
  KernelBuildOptions opts;
  opts.jobs = jobs;
  const auto positivity = min_eigenvalue(build_kernel_matrix(p, g, c, opts));
  Diagnostics d;
  d.rs_pass = report.rs_pass;
  d.ppt_pass = report.ppt_pass;
  d.operator_positive = positivity.verdict == Verdict::Positive;
  d.wigner_nonnegative = true;
  return d;
}

Diagnostics beamsplitter_diagnostics(double p, const Constants& c) {
  const auto rho = apply_beamsplitter(beamsplitter_input(p));
  const auto pt = hermitian_spectrum(partial_transpose_fock(rho.matrix()));
  Diagnostics d;
  d.rs_pass = rs_test(beamsplitter_covariance(p, c), c).pass;
  d.ppt_pass = pt[0] >= -kSignSlack;
  d.operator_positive = true;  // a valid density matrix by construction
  d.wigner_nonnegative = two_mode_wigner_min(p, c) >= -kSignSlack;
  return d;
}

CsvTable cmd_fock_sweep(const FockSweepConfig& cfg) {
  std::vector<double> grid;
  validated([&] {
    cfg.constants.validate();
    grid = linear_grid(cfg.p_min, cfg.p_max, cfg.p_points);
    for (double p : grid) require(p >= 0.0 && p <= 1.0, "p-grid must lie in [0, 1]");
  });
  std::vector<std::vector<std::string>> rows(grid.size());
  parallel_for(grid.size(), cfg.jobs, [&](std::size_t i) {
    const double p = grid[i];
    const auto rho = apply_beamsplitter(beamsplitter_input(p));
    const double lambda_min = hermitian_spectrum(partial_transpose_fock(rho.matrix()))[0];
    const double wmin = two_mode_wigner_min(p, cfg.constants);
    const Region region = classify(beamsplitter_diagnostics(p, cfg.constants));
    rows[i] = {format_double(p), format_double(lambda_min), format_double(wmin),
               to_string(region)};
  });
  CsvTable t;
  t.header = {"p", "lambda_min_pt", "wigner_min", "region"};
  t.rows = std::move(rows);
  maybe_write(cfg.out, t);
  return t;
}

TomographyReport cmd_tomography(const TomographyConfig& cfg, std::ostream& log) {
  WignerGrid source;
  std::function<double(double, double)> exact;
  validated([&] {
    cfg.constants.validate();
    require(cfg.angles >= 2, "tomography needs at least 2 angles");
    require(cfg.cutoff > 0.0 && cfg.cutoff <= 1.0, "cutoff must be in (0, 1]");
    const Constants c = cfg.constants;
    if (cfg.source == "file") {
      require(!cfg.wigner_file.empty(), "source=file needs --wigner-file");
      require(std::filesystem::exists(cfg.wigner_file),
              "Wigner grid file not found: " + cfg.wigner_file.string());
      source = read_wigner(cfg.wigner_file);
      return;
    }
    require(cfg.samples >= 2 && cfg.lo < cfg.hi, "need samples >= 2 and lo < hi");
    if (cfg.source == "vacuum") {
      exact = [c](double q, double p) { return vacuum_wigner(q, p, c); };
    } else if (cfg.source == "fock1") {
      exact = [c](double q, double p) { return fock1_wigner(q, p, c); };
    } else if (cfg.source == "mixture") {
      require(cfg.p >= 0.0 && cfg.p <= 1.0, "mixture weight p must lie in [0, 1]");
      const double w = cfg.p;
      exact = [c, w](double q, double p) { return fock_mixture_wigner(w, q, p, c); };
    } else {
      throw UsageError("unknown source '" + cfg.source +
                       "' (expected vacuum, fock1, mixture or file)");
    }
    source = sample_wigner(exact, cfg.lo, cfg.hi, cfg.samples);
  });

  const MarginalSet ms = marginal_set(source, cfg.angles, cfg.jobs);
  ReconstructionOptions opts;
  opts.radon.cutoff = cfg.cutoff;
  opts.radon.jobs = cfg.jobs;

  TomographyReport r;
  r.reconstruction = reconstruct_operator(ms, cfg.constants, opts);
  const WignerGrid& w = r.reconstruction.wigner;
  if (exact) r.linf_error = max_abs_error(w, exact);
  r.wigner_min = grid_min(w);
  r.wigner_integral = w.integral();
  // Value at the grid point nearest the origin.
  Eigen::Index iq = 0, ip = 0;
  w.q_axis.cwiseAbs().minCoeff(&iq);
  w.p_axis.cwiseAbs().minCoeff(&ip);
  r.wigner_at_origin = w.values(iq, ip);

  const auto& pos = r.reconstruction.positivity;
  log << "source: " << cfg.source << '\n'
      << "angles: " << cfg.angles << "  samples: " << source.q_axis.size() << '\n';
  if (r.linf_error) log << "linf_error: " << format_double(*r.linf_error) << '\n';
  log << "wigner_at_origin: " << format_double(r.wigner_at_origin) << '\n'
      << "wigner_min: " << format_double(r.wigner_min) << '\n'
      << "wigner_nonnegative: " << format_bool(reconstructed_nonnegative(w)) << '\n'
      << "wigner_integral: " << format_double(r.wigner_integral) << '\n'
      << "raw_kernel_trace: " << format_double(r.reconstruction.raw_trace) << '\n'
      << "lambda_min: " << format_double(pos.lambda_min) << '\n'
      << "tolerance: " << format_double(pos.tolerance) << '\n'
      << "verdict: " << to_string(pos.verdict) << '\n';

  if (!cfg.dump.empty()) write_wigner(cfg.dump, w);
  if (!cfg.out.empty()) {
    CsvTable t;
    t.header = {"source", "linf_error", "wigner_at_origin", "wigner_min",
                "raw_kernel_trace", "lambda_min", "tolerance", "verdict"};
    t.rows.push_back({cfg.source, r.linf_error ? format_double(*r.linf_error) : "",
                      format_double(r.wigner_at_origin), format_double(r.wigner_min),
                      format_double(r.reconstruction.raw_trace),
                      format_double(pos.lambda_min), format_double(pos.tolerance),
                      to_string(pos.verdict)});
    write_csv(cfg.out, t);
  }
  return r;
}

ClassifyReport cmd_classify(const ClassifyConfig& cfg, std::ostream& log) {
  ClassifyReport r;
  validated([&] {
    cfg.constants.validate();
    if (cfg.state == "displaced-pair") {
      cfg.params.validate();
      cfg.grid.validate();
      require(cfg.grid.dims == 2, "displaced-pair kernel needs dims = 2");
      require(cfg.grid.matrix_dim() <= kDefaultMaxKernelDim,
              "kernel grid exceeds the memory guard");
    } else if (cfg.state == "beamsplitter") {
      require(cfg.p >= 0.0 && cfg.p <= 1.0, "p must lie in [0, 1]");
    } else if (cfg.state == "manual") {
      const auto rs = parse_tristate("rs_pass", cfg.rs_pass);
      const auto ppt = parse_tristate("ppt_pass", cfg.ppt_pass);
      require(rs.has_value() && ppt.has_value(),
              "manual mode needs rs_pass and ppt_pass set to true or false");
      r.diagnostics.rs_pass = *rs;
      r.diagnostics.ppt_pass = *ppt;
      r.diagnostics.operator_positive =
          parse_tristate("operator_positive", cfg.operator_positive);
      r.diagnostics.wigner_nonnegative =
          parse_tristate("wigner_nonnegative", cfg.wigner_nonnegative);
    } else {
      throw UsageError("unknown state '" + cfg.state +
                       "' (expected displaced-pair, beamsplitter or manual)");
    }
  });
  if (cfg.state == "displaced-pair") {
    r.diagnostics = displaced_pair_diagnostics(cfg.params, cfg.grid, cfg.constants, cfg.jobs);
  } else if (cfg.state == "beamsplitter") {
    r.diagnostics = beamsplitter_diagnostics(cfg.p, cfg.constants);
  }
  r.region = classify(r.diagnostics);
  if (r.region == Region::Separable) r.note = std::string(kSeparableCaveat);

  const auto& d = r.diagnostics;
  log << "state: " << cfg.state << '\n'
      << "rs_pass: " << format_bool(d.rs_pass) << '\n'
      << "ppt_pass: " << format_bool(d.ppt_pass) << '\n'
      << "operator_positive: " << format_tristate(d.operator_positive) << '\n'
      << "wigner_nonnegative: " << format_tristate(d.wigner_nonnegative) << '\n'
      << "region: " << to_string(r.region) << '\n';
  if (!r.note.empty()) log << "note: " << r.note << '\n';

  if (!cfg.out.empty()) {
    CsvTable t;
    t.header = {"state", "rs_pass", "ppt_pass", "operator_positive",
                "wigner_nonnegative", "region", "note"};
    t.rows.push_back({cfg.state, format_bool(d.rs_pass), format_bool(d.ppt_pass),
                      format_tristate(d.operator_positive),
                      format_tristate(d.wigner_nonnegative), to_string(r.region),
                      r.note.empty() ? "" : "ppt-necessary-only"});
    write_csv(cfg.out, t);
  }
  return r;
}

}  // namespace wwlab
