#pragma once

// Noiseless homodyne tomography: rotated-quadrature marginals of a Wigner
// grid, filtered back-projection back to a Wigner grid, and the positivity
// test of the reconstructed operator.

#include "wwlab/phase_space.hpp"
#include "wwlab/weyl_kernel.hpp"
#include "wwlab/wigner_grid.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace wwlab {

/// Density of x_phi = cos(phi) q + sin(phi) p, sampled on a uniform axis.
struct QuadratureMarginal {
  double phi = 0.0;
  Eigen::VectorXd x_axis;
  Eigen::VectorXd density;

  double integral() const;
};

/// Marginals at equispaced, strictly increasing angles in [0, pi), all on the
/// same x axis.
struct MarginalSet {
  std::vector<QuadratureMarginal> marginals;

  std::size_t size() const { return marginals.size(); }
  /// Throws std::invalid_argument unless there are >= 2 angles, strictly
  /// increasing in [0, pi), sharing one uniform x axis.
  void validate() const;
};

/// Line integral of W orthogonal to x_phi, by bilinear interpolation of the
/// grid along rotated lines (zero outside the grid). phi is reduced mod pi.
/// The x axis is the grid's q axis. Interpolation round-off below zero is
/// clamped so that the density stays nonnegative.
QuadratureMarginal radon_marginal(const WignerGrid& w, double phi);

/// n_angles marginals at phi_k = k pi / n_angles.
MarginalSet marginal_set(const WignerGrid& w, int n_angles, unsigned jobs = 1);

/// Marginals from an analytic density(phi, x) on n points of [lo, hi].
MarginalSet marginal_set(const std::function<double(double, double)>& density,
                         int n_angles, double lo, double hi, int n);

struct InverseRadonOptions {
  /// Ramp-filter cutoff as a fraction of the Nyquist frequency pi / dx.
  double cutoff = 1.0;
  unsigned jobs = 1;
};

/// Filtered back-projection onto the square grid spanned by the marginals'
/// x axis. Each marginal is convolved (via zero-padded FFT) with the
/// band-limited |omega| impulse response on a 4x oversampled axis, then
/// back-projected with linear interpolation and averaged over angles.
WignerGrid inverse_radon(const MarginalSet& ms, const InverseRadonOptions& opts = {});

/// Largest absolute pointwise difference between a grid and a function.
double max_abs_error(const WignerGrid& w,
                     const std::function<double(double, double)>& exact);

/// Global minimum value of a grid.
double grid_min(const WignerGrid& w);

/// Reconstructed values above -kNegativityFloor count as nonnegative.
inline constexpr double kNegativityFloor = 1e-3;

/// True when grid_min(w) >= -floor.
bool reconstructed_nonnegative(const WignerGrid& w, double floor = kNegativityFloor);

/// Tolerance for positivity of reconstructed operators, relative to the
/// spectral norm; the same scale as the 1e-2 reconstruction error bound.
inline constexpr double kReconstructionRelTolerance = 1e-2;

struct ReconstructionOptions {
  InverseRadonOptions radon;
  EigenOptions eig{.rel_tolerance = kReconstructionRelTolerance};
};

struct OperatorReconstruction {
  WignerGrid wigner;
  /// Positivity of the trace-normalized kernel.
  PositivityReport positivity;
  /// Kernel trace before normalization.
  double raw_trace = 0.0;
};

/// inverse_radon -> wigner_to_kernel -> trace normalization -> min_eigenvalue.
OperatorReconstruction reconstruct_operator(const MarginalSet& ms,
                                            const Constants& c,
                                            const ReconstructionOptions& opts = {});

}  // namespace wwlab
