#pragma once

#include <Eigen/Dense>

#include <functional>

namespace wwlab {

/// n points from lo to hi inclusive.
Eigen::VectorXd uniform_axis(double lo, double hi, int n);

/// True when consecutive spacings agree to 1e-9 relative.
bool is_uniform_axis(const Eigen::VectorXd& axis);

/// Single-mode phase-space function sampled on a rectangular grid;
/// values(i, j) = W(q_axis[i], p_axis[j]).
struct WignerGrid {
  Eigen::VectorXd q_axis;
  Eigen::VectorXd p_axis;
  Eigen::MatrixXd values;

  double dq() const;
  double dp() const;
  /// Riemann sum times cell area.
  double integral() const;
  /// Throws std::invalid_argument on mismatched shapes or non-uniform axes.
  void validate() const;
};

/// Samples fn on the square [lo, hi]^2 with n points per axis.
WignerGrid sample_wigner(const std::function<double(double, double)>& fn,
                         double lo, double hi, int n);

}  // namespace wwlab
