#include "wwlab/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wwlab {

namespace {

bool symmetric_within(const Mat4& m, double rel_tol) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

}  // namespace

void Constants::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("hbar must be a positive finite number, got " +
                                std::to_string(hbar));
  }
}

CovarianceMatrix::CovarianceMatrix(const Mat4& entries) : entries_(entries) {
  if (!entries_.allFinite()) {
    throw std::invalid_argument("covariance matrix has non-finite entries");
  }
  if (!symmetric_within(entries_, 1e-12)) {
    throw std::invalid_argument("covariance matrix is not symmetric");
  }
}

void GaussianComponent::validate() const {
  if (!mean.allFinite() || !cov.allFinite()) {
    throw std::invalid_argument("Gaussian component has non-finite entries");
  }
  if (!symmetric_within(cov, 1e-12)) {
    throw std::invalid_argument("Gaussian component covariance is not symmetric");
  }
  Eigen::LLT<Mat4> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(
        "Gaussian component covariance is not positive-definite");
  }
}

GaussianMixture2Mode::GaussianMixture2Mode(
    std::vector<double> weights, std::vector<GaussianComponent> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("mixture needs at least one component");
  }
  if (weights_.size() != components_.size()) {
    throw std::invalid_argument("mixture weight/component count mismatch");
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("mixture weights must be nonnegative");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  for (const auto& c : components_) c.validate();
}

void DisplacedPairParams::validate() const {
  if (!(s_q > 0.0) || !(s_p > 0.0)) {
    throw std::invalid_argument("s_q and s_p must be positive");
  }
  if (!(std::abs(k_q) < s_q)) {
    throw std::invalid_argument("|k_q| must be < s_q (Q0 positive-definite)");
  }
  if (!(std::abs(k_p) < s_p)) {
    throw std::invalid_argument("|k_p| must be < s_p (P0 positive-definite)");
  }
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("displacement d must be nonnegative");
  }
}

Mat2 DisplacedPairParams::q0() const {
  Mat2 m;
  m << s_q, k_q, k_q, s_q;
  return m;
}

Mat2 DisplacedPairParams::p0() const {
  Mat2 m;
  m << s_p, k_p, k_p, s_p;
  return m;
}

Mat4 DisplacedPairParams::sigma0() const {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = q0();
  m.bottomRightCorner<2, 2>() = p0();
  return m;
}

DisplacedPairParams representational_params(double d) {
  return {.s_q = 0.5, .s_p = 0.5, .k_q = 0.3, .k_p = 0.3, .d = d};
}

DisplacedPairParams hybrid_params(double d) {
  return {.s_q = 1.0, .s_p = 1.0, .k_q = 0.3, .k_p = -0.8, .d = d};
}

double density_at(const GaussianMixture2Mode& mix, const Vec4& z) {
  constexpr double norm4 = 4.0 * std::numbers::pi * std::numbers::pi;  // (2 pi)^2
  double total = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    const auto& c = mix.components()[i];
    Eigen::LLT<Mat4> llt(c.cov);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("singular component covariance");
    }
    const Vec4 r = z - c.mean;
    const double quad = r.dot(llt.solve(r));
    const double sqrt_det = llt.matrixL().determinant();
    total += mix.weights()[i] * std::exp(-0.5 * quad) / (norm4 * sqrt_det);
  }
  return total;
}

GaussianMixture2Mode make_displaced_pair(const DisplacedPairParams& p) {
  p.validate();
  const Mat4 sigma0 = p.sigma0();
  GaussianComponent plus{Vec4(p.d, -p.d, 0.0, 0.0), sigma0};
  GaussianComponent minus{Vec4(-p.d, p.d, 0.0, 0.0), sigma0};
  return GaussianMixture2Mode({0.5, 0.5}, {plus, minus});
}

CovarianceMatrix mixture_covariance(const GaussianMixture2Mode& mix) {
  Vec4 mean = Vec4::Zero();
  Mat4 second = Mat4::Zero();
  for (std::size_t i = 0; i < mix.size(); ++i) {
    const auto& c = mix.components()[i];
    const double w = mix.weights()[i];
    mean += w * c.mean;
    second += w * (c.cov + c.mean * c.mean.transpose());
  }
  Mat4 cov = second - mean * mean.transpose();
  // Round-off in the outer products can leave ~1 ulp asymmetry.
  cov = (0.5 * (cov + cov.transpose())).eval();
  return CovarianceMatrix(cov);
}

CovarianceMatrix displaced_pair_covariance(const DisplacedPairParams& p) {
  p.validate();
  const double d2 = p.d * p.d;
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = p.s_q + d2;
  m(0, 1) = m(1, 0) = p.k_q - d2;
  m(2, 2) = m(3, 3) = p.s_p;
  m(2, 3) = m(3, 2) = p.k_p;
  return CovarianceMatrix(m);
}

}  // namespace wwlab
