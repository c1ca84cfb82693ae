#include "wwlab/wigner_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace wwlab {

Eigen::VectorXd uniform_axis(double lo, double hi, int n) {
  if (n < 2 || !(lo < hi)) {
    throw std::invalid_argument("axis needs n >= 2 and lo < hi");
  }
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

bool is_uniform_axis(const Eigen::VectorXd& axis) {
  if (axis.size() < 2) return false;
  const double h = (axis[axis.size() - 1] - axis[0]) / (axis.size() - 1);
  if (!(h > 0.0)) return false;
  for (Eigen::Index i = 1; i < axis.size(); ++i) {
    if (std::abs(axis[i] - axis[i - 1] - h) > 1e-9 * h) return false;
  }
  return true;
}

double WignerGrid::dq() const {
  return (q_axis[q_axis.size() - 1] - q_axis[0]) / (q_axis.size() - 1);
}

double WignerGrid::dp() const {
  return (p_axis[p_axis.size() - 1] - p_axis[0]) / (p_axis.size() - 1);
}

double WignerGrid::integral() const { return values.sum() * dq() * dp(); }

void WignerGrid::validate() const {
  if (values.rows() != q_axis.size() || values.cols() != p_axis.size()) {
    throw std::invalid_argument("Wigner grid shape does not match its axes");
  }
  if (!is_uniform_axis(q_axis) || !is_uniform_axis(p_axis)) {
    throw std::invalid_argument("Wigner grid axes must be uniform and increasing");
  }
  if (!values.allFinite()) {
    throw std::invalid_argument("Wigner grid has non-finite values");
  }
}

WignerGrid sample_wigner(const std::function<double(double, double)>& fn,
                         double lo, double hi, int n) {
  WignerGrid w;
  w.q_axis = uniform_axis(lo, hi, n);
  w.p_axis = w.q_axis;
  w.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.values(i, j) = fn(w.q_axis[i], w.p_axis[j]);
  }
  return w;
}

}  // namespace wwlab
