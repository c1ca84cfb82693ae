#include "wwlab/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wwlab {

namespace {

constexpr double kDensityTol = 1e-12;

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("mixing weight p must lie in [0, 1]");
  }
}

template <typename M>
void validate_density(const M& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw std::invalid_argument("density matrix not finite");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - std::complex<double>(1.0, 0.0)) > kDensityTol) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  const MatXc h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatXc> solver(h, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()[0] < -kDensityTol) {
    throw std::invalid_argument("density matrix is not positive-semidefinite");
  }
}

}  // namespace

FockDensity::FockDensity(MatXc matrix) : matrix_(std::move(matrix)) {
  validate_density(matrix_);
}

TwoModeFockDensity::TwoModeFockDensity(const Mat4c& matrix) : matrix_(matrix) {
  validate_density(matrix_);
}

FockDensity single_mode_mixture(double p, int dim) {
  check_probability(p);
  if (dim < 2) throw std::invalid_argument("Fock truncation must be >= 2");
  MatXc m = MatXc::Zero(dim, dim);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return FockDensity(std::move(m));
}

Mat4c beamsplitter_unitary() {
  const double r = std::numbers::sqrt2 / 2.0;
  Mat4c u = Mat4c::Zero();
  // Columns are images of |00>, |01>, |10>, |11>.
  u(0, 0) = 1.0;
  u(1, 1) = -r;  // |01> -> (|10> - |01>) / sqrt 2
  u(2, 1) = r;
  u(1, 2) = r;  // |10> -> (|10> + |01>) / sqrt 2
  u(2, 2) = r;
  u(3, 3) = 1.0;  // placeholder; inputs touching |11> are rejected
  return u;
}

TwoModeFockDensity apply_beamsplitter(const TwoModeFockDensity& rho_in) {
  const Mat4c& m = rho_in.matrix();
  double leak = 0.0;
  for (int k = 0; k < 4; ++k) leak = std::max(leak, std::abs(m(3, k)));
  if (leak > kDensityTol) {
    throw std::invalid_argument(
        "beamsplitter input has support on |11>, outside the one-photon sector");
  }
  const Mat4c u = beamsplitter_unitary();
  Mat4c out = u * m * u.adjoint();
  out = (0.5 * (out + out.adjoint())).eval();
  return TwoModeFockDensity(out);
}

TwoModeFockDensity beamsplitter_input(double p) {
  check_probability(p);
  Mat4c m = Mat4c::Zero();
  m(0, 0) = p;        // |00>
  m(2, 2) = 1.0 - p;  // |10>
  return TwoModeFockDensity(m);
}

TwoModeFockDensity beamsplitter_output(double p) {
  check_probability(p);
  const double half = 0.5 * (1.0 - p);
  Mat4c m = Mat4c::Zero();
  m(0, 0) = p;
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = half;
  return TwoModeFockDensity(m);
}

Mat4c partial_transpose_fock(const Mat4c& rho) {
  Mat4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          out(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
  return out;
}

PTSpectrum pt_spectrum(double p) {
  check_probability(p);
  const double root = std::sqrt(2.0 * p * p - 2.0 * p + 1.0);
  PTSpectrum s;
  s.p = p;
  s.eigenvalues = {0.5 * (p - root), 0.5 * (1.0 - p), 0.5 * (1.0 - p),
                   0.5 * (p + root)};
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

std::array<double, 4> hermitian_spectrum(const Mat4c& m) {
  const Mat4c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4c> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("4x4 Hermitian eigensolver failed");
  }
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = solver.eigenvalues()[k];
  return out;
}

double vacuum_wigner(double q, double pm, const Constants& c) {
  const double r2 = (q * q + pm * pm) / c.hbar;
  return std::exp(-r2) / (std::numbers::pi * c.hbar);
}

double fock1_wigner(double q, double pm, const Constants& c) {
  const double r2 = (q * q + pm * pm) / c.hbar;
  return (2.0 * r2 - 1.0) * std::exp(-r2) / (std::numbers::pi * c.hbar);
}

double fock_mixture_wigner(double p, double q, double pm, const Constants& c) {
  check_probability(p);
  return p * vacuum_wigner(q, pm, c) + (1.0 - p) * fock1_wigner(q, pm, c);
}

double fock_mixture_wigner_min(double p, const Constants& c) {
  check_probability(p);
  return std::min(0.0, (2.0 * p - 1.0) / (std::numbers::pi * c.hbar));
}

Mat4 beamsplitter_symplectic() {
  const double r = std::numbers::sqrt2 / 2.0;
  Mat2 mix;
  mix << r, r, r, -r;
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = mix;
  s.bottomRightCorner<2, 2>() = mix;
  return s;
}

CovarianceMatrix beamsplitter_covariance(double p, const Constants& c) {
  check_probability(p);
  c.validate();
  // <q_A^2> = hbar (1/2 + <n_A>) with <n_A> = (1 - p) / 2, and
  // <q_A q_B> = hbar Re<a^dag b> = hbar (1 - p) / 2; likewise for momenta.
  Mat2 block;
  block << 1.0 - 0.5 * p, 0.5 * (1.0 - p), 0.5 * (1.0 - p), 1.0 - 0.5 * p;
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = c.hbar * block;
  m.bottomRightCorner<2, 2>() = c.hbar * block;
  return CovarianceMatrix(m);
}

double two_mode_wigner(double p, const Vec4& z, const Constants& c) {
  // S is orthogonal and an involution, so S^-1 z = S z.
  const Vec4 zin = beamsplitter_symplectic() * z;
  return fock_mixture_wigner(p, zin[0], zin[2], c) * vacuum_wigner(zin[1], zin[3], c);
}

double two_mode_wigner_min(double p, const Constants& c) {
  return fock_mixture_wigner_min(p, c) / (std::numbers::pi * c.hbar);
}

}  // namespace wwlab
