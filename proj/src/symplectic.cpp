#include "wwlab/symplectic.hpp"

#include "wwlab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace wwlab {

Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega.topRightCorner<2, 2>() = Mat2::Identity();
  omega.bottomLeftCorner<2, 2>() = -Mat2::Identity();
  return omega;
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  using Mat4c = Eigen::Matrix4cd;
  const std::complex<double> i_unit(0.0, 1.0);
  const Mat4c m = i_unit * (symplectic_form() * sigma.entries()).cast<std::complex<double>>();

  Eigen::ComplexEigenSolver<Mat4c> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::domain_error("eigensolver failed on i*Omega*Sigma");
  }
  std::array<std::complex<double>, 4> ev;
  for (int k = 0; k < 4; ++k) ev[k] = solver.eigenvalues()(k);
  std::sort(ev.begin(), ev.end(),
            [](auto a, auto b) { return a.real() < b.real(); });

  double scale = 0.0;
  for (auto v : ev) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return {0.0, 0.0};

  const double tol = 1e-8 * scale;
  for (auto v : ev) {
    if (std::abs(v.imag()) > tol) {
      throw std::domain_error(
          "i*Omega*Sigma has non-real eigenvalues; covariance is invalid");
    }
  }
  if (std::abs(ev[0].real() + ev[3].real()) > tol ||
      std::abs(ev[1].real() + ev[2].real()) > tol) {
    throw std::domain_error(
        "eigenvalues of i*Omega*Sigma do not pair as +/-nu; covariance is "
        "invalid");
  }
  const double outer = 0.5 * (std::abs(ev[0].real()) + std::abs(ev[3].real()));
  const double inner = 0.5 * (std::abs(ev[1].real()) + std::abs(ev[2].real()));
  return {std::min(inner, outer), std::max(inner, outer)};
}

CovarianceMatrix partial_transpose_cov(const CovarianceMatrix& sigma) {
  Mat4 m = sigma.entries();
  // L Sigma L with L = diag(1, 1, 1, -1): flip row and column 3, leave (3, 3).
  for (int k = 0; k < 4; ++k) {
    if (k == 3) continue;
    m(3, k) = -m(3, k);
    m(k, 3) = -m(k, 3);
  }
  return CovarianceMatrix(m);
}

namespace {

TestOutcome threshold_test(double nu_min, const Constants& c) {
  c.validate();
  const double bound = 0.5 * c.hbar;
  return {nu_min >= bound - kCriteriaSlack, nu_min - bound};
}

}  // namespace

TestOutcome rs_test(const CovarianceMatrix& sigma, const Constants& c) {
  return threshold_test(symplectic_eigenvalues(sigma)[0], c);
}

TestOutcome ppt_test(const CovarianceMatrix& sigma, const Constants& c) {
  return threshold_test(symplectic_eigenvalues(partial_transpose_cov(sigma))[0],
                        c);
}

CriteriaReport criteria_report(const CovarianceMatrix& sigma,
                               const Constants& c) {
  c.validate();
  CriteriaReport r;
  r.hbar = c.hbar;
  r.nu_min = symplectic_eigenvalues(sigma)[0];
  r.nu_tilde_min = symplectic_eigenvalues(partial_transpose_cov(sigma))[0];
  r.rs_pass = threshold_test(r.nu_min, c).pass;
  r.ppt_pass = threshold_test(r.nu_tilde_min, c).pass;
  return r;
}

ClosedFormSpectrum closed_form_spectrum(const DisplacedPairParams& p) {
  const double sq = p.s_q, sp = p.s_p, kq = p.k_q, kp = p.k_p;
  const double d2 = p.d * p.d;
  auto root = [](double radicand, const char* name) {
    if (radicand < 0.0) {
      throw std::domain_error(std::string("negative radicand in closed form for ") +
                              name);
    }
    return std::sqrt(radicand);
  };
  ClosedFormSpectrum s;
  s.nu1 = root(kp * kq + kp * sq + kq * sp + sp * sq, "nu1");
  s.nu2 = root(-2 * d2 * kp + 2 * d2 * sp + kp * kq - kp * sq - kq * sp + sq * sp,
               "nu2");
  s.nu_tilde1 = root(-kp * kq - kp * sq + kq * sp + sp * sq, "nu_tilde1");
  s.nu_tilde2 =
      root(2 * d2 * kp + 2 * d2 * sp - kp * kq + kp * sq - kq * sp + sp * sq,
           "nu_tilde2");
  return s;
}

std::vector<CriteriaReport> scan_displacement(const DisplacedPairParams& p,
                                              const std::vector<double>& d_grid,
                                              const Constants& c,
                                              unsigned jobs) {
  if (d_grid.empty()) throw std::invalid_argument("empty displacement grid");
  c.validate();
  for (double d : d_grid) {
    if (!(d >= 0.0)) throw std::invalid_argument("displacements must be >= 0");
  }
  std::vector<CriteriaReport> rows(d_grid.size());
  parallel_for(d_grid.size(), jobs, [&](std::size_t i) {
    const auto params = p.with_displacement(d_grid[i]);
    rows[i] = criteria_report(mixture_covariance(make_displaced_pair(params)), c);
    rows[i].d = d_grid[i];
  });
  return rows;
}

double rs_crossing(const DisplacedPairParams& p, double lo, double hi,
                   const Constants& c, double tol) {
  c.validate();
  auto f = [&](double d) {
    const auto sigma = mixture_covariance(make_displaced_pair(p.with_displacement(d)));
    return symplectic_eigenvalues(sigma)[0] - 0.5 * c.hbar;
  };
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw std::invalid_argument("RS margin does not change sign on [lo, hi]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wwlab
