#pragma once

// Fock-basis reference states: the vacuum / single-photon mixture, its
// balanced-beamsplitter output, partial-transpose spectra and the closed-form
// Wigner functions of the low Fock states.

#include "wwlab/phase_space.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace wwlab {

using MatXc = Eigen::MatrixXcd;
using Mat4c = Eigen::Matrix4cd;

/// Single-mode density matrix in the truncated basis {|0>, ..., |D-1>}.
class FockDensity {
 public:
  /// Requires Hermitian, unit trace and positive-semidefinite, all to 1e-12.
  explicit FockDensity(MatXc matrix);

  const MatXc& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  MatXc matrix_;
};

/// Two-mode density matrix in {|00>, |01>, |10>, |11>}, index 2 a + b for
/// |a, b> with a photons in mode A and b in mode B.
class TwoModeFockDensity {
 public:
  explicit TwoModeFockDensity(const Mat4c& matrix);

  const Mat4c& matrix() const { return matrix_; }

 private:
  Mat4c matrix_;
};

/// p |0><0| + (1 - p) |1><1| padded to `dim` levels (dim >= 2).
FockDensity single_mode_mixture(double p, int dim = 2);

/// Balanced beamsplitter on the <= 1 photon sector:
/// |00> -> |00>, |10> -> (|10> + |01>) / sqrt 2, |01> -> (|10> - |01>) / sqrt 2.
/// The image of |11> leaves the truncated space, so inputs with any weight or
/// coherence on |11> are rejected with std::invalid_argument.
Mat4c beamsplitter_unitary();
TwoModeFockDensity apply_beamsplitter(const TwoModeFockDensity& rho_in);

/// rho(p) (x) |0><0| in the two-mode basis.
TwoModeFockDensity beamsplitter_input(double p);

/// p |00><00| + (1 - p) |psi+><psi+| with psi+ = (|10> + |01>) / sqrt 2.
TwoModeFockDensity beamsplitter_output(double p);

/// Transpose on subsystem B: <a b|rho|a' b'> -> <a b'|rho|a' b>.
/// Not necessarily positive, so a plain matrix is returned.
Mat4c partial_transpose_fock(const Mat4c& rho);

struct PTSpectrum {
  std::array<double, 4> eigenvalues{};  // ascending
  double p = 0.0;

  double min() const { return eigenvalues[0]; }
};

/// Closed form: 0.5 (p -/+ sqrt(2 p^2 - 2 p + 1)) and (1 - p) / 2 twice.
PTSpectrum pt_spectrum(double p);

/// Ascending eigenvalues of a Hermitian 4x4.
std::array<double, 4> hermitian_spectrum(const Mat4c& m);

// Closed-form Wigner functions. They are written for hbar = 1,
// W0 = exp(-r^2) / pi and W1 = (2 r^2 - 1) exp(-r^2) / pi with r^2 = q^2 + p^2.
// For general hbar each mode is rescaled as W(q, p) = W1(q / sqrt hbar,
// p / sqrt hbar) / hbar, which keeps the unit normalization.

double vacuum_wigner(double q, double pm, const Constants& c);
double fock1_wigner(double q, double pm, const Constants& c);

/// p W0 + (1 - p) W1. Its global minimum is (2 p - 1) / (pi hbar) at the
/// origin whenever p < 1/2.
double fock_mixture_wigner(double p, double q, double pm, const Constants& c);

/// Infimum over phase space of the single-mode mixture's Wigner function:
/// min(0, (2 p - 1) / pi) for hbar = 1 (zero is approached at infinity).
double fock_mixture_wigner_min(double p, const Constants& c);

/// Two-mode Wigner function of the beamsplitter output at z = (q1, q2, p1, p2).
/// The beamsplitter is a symplectic rotation, so W_out(z) = W_in(S^-1 z) with
/// W_in = W_rho(p)(z1) W0(z2).
double two_mode_wigner(double p, const Vec4& z, const Constants& c);

/// Infimum of two_mode_wigner: min(0, (2 p - 1) / pi) / pi for hbar = 1.
double two_mode_wigner_min(double p, const Constants& c);

/// Quadrature covariance of beamsplitter_output(p) in (q1, q2, p1, p2)
/// ordering: both blocks hbar [[1 - p / 2, (1 - p) / 2], [(1 - p) / 2, 1 - p / 2]].
CovarianceMatrix beamsplitter_covariance(double p, const Constants& c);

/// Quadrature rotation S of the beamsplitter in (q1, q2, p1, p2) ordering.
Mat4 beamsplitter_symplectic();

}  // namespace wwlab
