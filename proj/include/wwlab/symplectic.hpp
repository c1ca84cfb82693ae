#pragma once

// Symplectic spectra of two-mode covariance matrices, the Robertson-Schrodinger
// physicality test and the covariance-level PPT test.

#include "wwlab/phase_space.hpp"

#include <array>
#include <vector>

namespace wwlab {

/// Absolute slack below hbar/2 that still counts as a pass, so that states
/// saturating the bound (the vacuum) pass.
inline constexpr double kCriteriaSlack = 1e-12;

/// Omega = [[0, I2], [-I2, 0]] in (q1, q2, p1, p2) ordering.
Mat4 symplectic_form();

/// Ascending pair of symplectic eigenvalues.
using SymplecticSpectrum = std::array<double, 2>;

/// Moduli of the eigenvalues of i * Omega * Sigma. These come in +/- pairs for
/// any valid covariance; the pairing is checked to 1e-8 relative and a
/// std::domain_error is thrown when it fails.
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Sigma^Gamma = L Sigma L with L = diag(1, 1, 1, -1) (p2 -> -p2).
CovarianceMatrix partial_transpose_cov(const CovarianceMatrix& sigma);

struct TestOutcome {
  bool pass = false;
  double margin = 0.0;  // nu_min - hbar/2
};

TestOutcome rs_test(const CovarianceMatrix& sigma, const Constants& c);
TestOutcome ppt_test(const CovarianceMatrix& sigma, const Constants& c);

struct CriteriaReport {
  double d = 0.0;
  double nu_min = 0.0;
  double nu_tilde_min = 0.0;
  bool rs_pass = false;
  bool ppt_pass = false;
  double hbar = 1.0;
};

CriteriaReport criteria_report(const CovarianceMatrix& sigma,
                               const Constants& c);

/// Closed-form symplectic eigenvalues of the displaced pair's covariance and
/// of its partial transpose.
struct ClosedFormSpectrum {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu_tilde1 = 0.0;
  double nu_tilde2 = 0.0;

  double nu_min() const { return std::min(nu1, nu2); }
  double nu_tilde_min() const { return std::min(nu_tilde1, nu_tilde2); }
};

/// Evaluates the four square-root expressions literally. Does not validate
/// the parameters; a negative radicand throws std::domain_error.
ClosedFormSpectrum closed_form_spectrum(const DisplacedPairParams& p);

/// One report per displacement in d_grid (the params' own d is ignored).
/// Rows are computed numerically from the assembled mixture covariance on up
/// to `jobs` threads and returned in input order.
std::vector<CriteriaReport> scan_displacement(const DisplacedPairParams& p,
                                              const std::vector<double>& d_grid,
                                              const Constants& c,
                                              unsigned jobs = 1);

/// Smallest d in [lo, hi] at which the RS test starts passing, by bisection on
/// nu_min(d) - hbar/2. Requires a sign change over the bracket.
double rs_crossing(const DisplacedPairParams& p, double lo, double hi,
                   const Constants& c, double tol = 1e-10);

}  // namespace wwlab
