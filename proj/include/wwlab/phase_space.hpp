#pragma once

// Classical two-mode phase-space densities built from Gaussian mixtures.
//
// Coordinates are always ordered z = (q1, q2, p1, p2). The symplectic form in
// this ordering is Omega = [[0, I], [-I, 0]].

#include <Eigen/Dense>

#include <vector>

namespace wwlab {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Physical constants shared by every hbar-dependent routine.
struct Constants {
  double hbar = 1.0;

  /// Throws std::invalid_argument unless hbar > 0.
  void validate() const;
};

/// Symmetric 4x4 second-moment matrix in (q1, q2, p1, p2) ordering.
class CovarianceMatrix {
 public:
  /// Throws std::invalid_argument if the matrix is not symmetric within 1e-12
  /// relative to its largest entry, or contains non-finite values.
  explicit CovarianceMatrix(const Mat4& entries);

  const Mat4& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  Mat2 q_block() const { return entries_.topLeftCorner<2, 2>(); }
  Mat2 p_block() const { return entries_.bottomRightCorner<2, 2>(); }

 private:
  Mat4 entries_;
};

struct GaussianComponent {
  Vec4 mean = Vec4::Zero();
  Mat4 cov = Mat4::Identity();

  /// Symmetric within 1e-12 relative and strictly positive-definite.
  void validate() const;
};

/// Weighted sum of two-mode Gaussians. Immutable once constructed.
class GaussianMixture2Mode {
 public:
  /// Validates every component; weights must be nonnegative and sum to 1
  /// within 1e-12, and the list must be nonempty.
  GaussianMixture2Mode(std::vector<double> weights,
                       std::vector<GaussianComponent> components);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<GaussianComponent>& components() const {
    return components_;
  }
  std::size_t size() const { return components_.size(); }

 private:
  std::vector<double> weights_;
  std::vector<GaussianComponent> components_;
};

/// Two displaced copies of one Gaussian, means (+d, -d, 0, 0) and (-d, +d, 0, 0),
/// sharing Sigma0 = blockdiag([[s_q, k_q], [k_q, s_q]], [[s_p, k_p], [k_p, s_p]]).
struct DisplacedPairParams {
  double s_q = 0.5;
  double s_p = 0.5;
  double k_q = 0.3;
  double k_p = 0.3;
  double d = 0.0;

  /// Requires s_q, s_p > 0, |k_q| < s_q, |k_p| < s_p and d >= 0.
  void validate() const;

  Mat2 q0() const;
  Mat2 p0() const;
  Mat4 sigma0() const;
  /// Position part of the "+" component mean: (d, -d).
  Vec2 q_offset() const { return {d, -d}; }

  DisplacedPairParams with_displacement(double displacement) const {
    DisplacedPairParams copy = *this;
    copy.d = displacement;
    return copy;
  }
};

/// The parameter set used for the displacement sweep and kernel negativity
/// study: s_q = s_p = 0.5, k_q = k_p = 0.3.
DisplacedPairParams representational_params(double d = 0.0);

/// s_q = s_p = 1, k_q = 0.3, k_p = -0.8: RS-satisfying, PPT-violating and
/// operator-positive.
DisplacedPairParams hybrid_params(double d = 0.0);

/// Normalized mixture density at z. Never negative.
double density_at(const GaussianMixture2Mode& mix, const Vec4& z);

GaussianMixture2Mode make_displaced_pair(const DisplacedPairParams& p);

/// Total second central moment: sum_i w_i (Sigma_i + mu_i mu_i^T) - mu mu^T.
CovarianceMatrix mixture_covariance(const GaussianMixture2Mode& mix);

/// Covariance of the displaced pair written out entrywise:
/// q-block [[s_q + d^2, k_q - d^2], [k_q - d^2, s_q + d^2]], p-block Sigma0's.
CovarianceMatrix displaced_pair_covariance(const DisplacedPairParams& p);

}  // namespace wwlab
