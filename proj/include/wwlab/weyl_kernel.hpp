#pragma once

// Weyl transform of classical phase-space densities into position-space
// operator kernels <x|chi|x'>, their lattice discretization and the operator
// positivity test.
//
// Two routes are provided. The displaced Gaussian pair has a closed-form
// kernel (the momentum integral is Gaussian). Arbitrary single-mode Wigner
// grids go through a quadrature of the momentum axis against exp(i p D / hbar).
// Both use the convention <x|chi|x'> = int dp W((x + x') / 2, p) exp(i p (x - x') / hbar)
// for W normalized to unit integral, so the continuum operator has unit trace.

#include "wwlab/phase_space.hpp"
#include "wwlab/wigner_grid.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace wwlab {

/// Lattice of n points per axis on [lo, hi] in `dims` configuration axes.
struct GridSpec {
  double lo = -8.0;
  double hi = 8.0;
  int n = 50;
  int dims = 2;

  void validate() const;
  double spacing() const { return (hi - lo) / (n - 1); }
  double point(int i) const { return lo + i * spacing(); }
  /// Matrix dimension n^dims.
  long matrix_dim() const;
};

/// Discretized kernel K_ij = <X_i|chi|X_j> (dx)^dims. The imaginary part is
/// empty for real kernels (the displaced-pair route) and antisymmetric
/// otherwise. 2-D lattice points are flattened as i = i1 * n + i2.
struct KernelMatrix {
  Eigen::MatrixXd real;
  Eigen::MatrixXd imag;
  GridSpec grid;
  bool measure_weighted = true;

  long size() const { return real.rows(); }
  bool is_complex() const { return imag.size() != 0; }
  double trace() const { return real.trace(); }
};

enum class Verdict { Positive, NonPositive };

std::string to_string(Verdict v);

struct PositivityReport {
  double lambda_min = 0.0;
  double trace = 0.0;
  Verdict verdict = Verdict::NonPositive;
  /// Absolute tolerance actually applied: rel_tolerance * spectral_norm.
  double tolerance = 0.0;
  double spectral_norm = 0.0;
  /// Full ascending spectrum when requested.
  std::optional<Eigen::VectorXd> spectrum;
};

/// Positivity tolerance relative to the spectral norm.
inline constexpr double kPositivityRelTolerance = 1e-8;

/// Matrices above this dimension are refused unless explicitly allowed.
inline constexpr long kDefaultMaxKernelDim = 10000;

struct KernelBuildOptions {
  long max_dim = kDefaultMaxKernelDim;
  bool allow_large = false;
  unsigned jobs = 1;
};

struct EigenOptions {
  double rel_tolerance = kPositivityRelTolerance;
  bool keep_spectrum = false;
};

/// Closed-form kernel of the displaced pair at configuration points x, x'.
double kernel_element(const Vec2& x, const Vec2& x_prime,
                      const DisplacedPairParams& p, const Constants& c);

/// Assembles the measure-weighted, symmetrized kernel on a 2-D lattice.
/// Throws std::length_error when n^2 exceeds the memory guard.
KernelMatrix build_kernel_matrix(const DisplacedPairParams& p, const GridSpec& g,
                                 const Constants& c,
                                 const KernelBuildOptions& opts = {});

/// Full Hermitian diagonalization of the symmetrized kernel.
PositivityReport min_eigenvalue(const KernelMatrix& k,
                                const EigenOptions& opts = {});

struct PositivityRow {
  double d = 0.0;
  double lambda_min = 0.0;
  double trace = 0.0;
  Verdict verdict = Verdict::NonPositive;
  double tolerance = 0.0;
};

/// One kernel build and eigensolve per displacement (the params' own d is
/// ignored). Rows run on up to opts.jobs threads and come back in input order.
std::vector<PositivityRow> positivity_scan(const DisplacedPairParams& p,
                                           const std::vector<double>& d_grid,
                                           const GridSpec& g, const Constants& c,
                                           const KernelBuildOptions& opts = {},
                                           const EigenOptions& eig = {});

/// Kernel of a single-mode Wigner grid. The momentum axis is integrated with
/// a rectangle rule against exp(i p D / hbar). Kernel points are
/// every second q-grid point so that every midpoint (x + x') / 2 falls exactly
/// on the q grid; a grid with N q-points yields a (N + 1) / 2 square kernel
/// with measure 2 dq. Throws std::invalid_argument if the momentum spacing
/// cannot resolve the largest separation (dp * D_max / hbar > pi).
KernelMatrix wigner_to_kernel(const WignerGrid& w, const Constants& c);

}  // namespace wwlab
