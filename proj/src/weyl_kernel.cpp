#include "wwlab/weyl_kernel.hpp"

#include "wwlab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wwlab {

void GridSpec::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("grid requires lo < hi");
  if (n < 2) throw std::invalid_argument("grid requires n >= 2");
  if (dims < 1) throw std::invalid_argument("grid requires dims >= 1");
}

long GridSpec::matrix_dim() const {
  long m = 1;
  for (int k = 0; k < dims; ++k) m *= n;
  return m;
}

std::string to_string(Verdict v) {
  return v == Verdict::Positive ? "POSITIVE" : "NON_POSITIVE";
}

namespace {

// Precomputed pieces of the displaced-pair kernel.
struct PairKernel {
  Mat2 q0_inv;
  Mat2 p0;
  Vec2 offset;
  double prefactor;
  double inv_two_hbar2;

  PairKernel(const DisplacedPairParams& p, const Constants& c) {
    p.validate();
    c.validate();
    const Mat2 q0 = p.q0();
    const double det_q = q0.determinant();
    if (!(det_q > 0.0)) throw std::invalid_argument("singular Q0");
    q0_inv = q0.inverse();
    p0 = p.p0();
    offset = p.q_offset();
    prefactor = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det_q));
    inv_two_hbar2 = 1.0 / (2.0 * c.hbar * c.hbar);
  }

  double operator()(const Vec2& x, const Vec2& xp) const {
    const Vec2 m = 0.5 * (x + xp);
    const Vec2 delta = x - xp;
    const Vec2 rp = m - offset;
    const Vec2 rm = m + offset;
    const double gauss_plus = std::exp(-0.5 * rp.dot(q0_inv * rp));
    const double gauss_minus = std::exp(-0.5 * rm.dot(q0_inv * rm));
    const double coherence = std::exp(-inv_two_hbar2 * delta.dot(p0 * delta));
    return 0.5 * prefactor * (gauss_plus + gauss_minus) * coherence;
  }
};

}  // namespace

double kernel_element(const Vec2& x, const Vec2& x_prime,
                      const DisplacedPairParams& p, const Constants& c) {
  return PairKernel(p, c)(x, x_prime);
}

KernelMatrix build_kernel_matrix(const DisplacedPairParams& p, const GridSpec& g,
                                 const Constants& c,
                                 const KernelBuildOptions& opts) {
  g.validate();
  if (g.dims != 2) {
    throw std::invalid_argument("the two-mode kernel needs a grid with dims = 2");
  }
  const long dim = g.matrix_dim();
  if (dim > opts.max_dim && !opts.allow_large) {
    const int suggested = static_cast<int>(std::floor(std::sqrt(double(opts.max_dim))));
    throw std::length_error("kernel dimension " + std::to_string(dim) +
                            " exceeds the limit " + std::to_string(opts.max_dim) +
                            "; use n <= " + std::to_string(suggested) +
                            " or allow large kernels explicitly");
  }

  const PairKernel kernel(p, c);
  const double h = g.spacing();
  const double measure = h * h;
  std::vector<Vec2> points(dim);
  for (int a = 0; a < g.n; ++a) {
    for (int b = 0; b < g.n; ++b) points[a * g.n + b] = Vec2(g.point(a), g.point(b));
  }

  KernelMatrix k;
  k.grid = g;
  k.measure_weighted = true;
  k.real.resize(dim, dim);
  parallel_for(static_cast<std::size_t>(dim), opts.jobs, [&](std::size_t i) {
    for (long j = 0; j < dim; ++j) {
      k.real(i, j) = measure * kernel(points[i], points[j]);
    }
  });
  k.real = (0.5 * (k.real + k.real.transpose())).eval();
  return k;
}

PositivityReport min_eigenvalue(const KernelMatrix& k, const EigenOptions& opts) {
  if (k.size() == 0) throw std::invalid_argument("empty kernel matrix");
  const auto mode = Eigen::EigenvaluesOnly;
  Eigen::VectorXd spectrum;
  if (k.is_complex()) {
    Eigen::MatrixXcd h(k.size(), k.size());
    h.real() = 0.5 * (k.real + k.real.transpose());
    h.imag() = 0.5 * (k.imag - k.imag.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, mode);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("Hermitian eigensolver did not converge");
    }
    spectrum = solver.eigenvalues();
  } else {
    const Eigen::MatrixXd s = 0.5 * (k.real + k.real.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, mode);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("symmetric eigensolver did not converge");
    }
    spectrum = solver.eigenvalues();
  }

  PositivityReport r;
  r.lambda_min = spectrum[0];
  r.trace = k.trace();
  r.spectral_norm = std::max(std::abs(spectrum[0]), std::abs(spectrum[spectrum.size() - 1]));
  r.tolerance = opts.rel_tolerance * r.spectral_norm;
  r.verdict = r.lambda_min >= -r.tolerance ? Verdict::Positive : Verdict::NonPositive;
  if (opts.keep_spectrum) r.spectrum = std::move(spectrum);
  return r;
}

std::vector<PositivityRow> positivity_scan(const DisplacedPairParams& p,
                                           const std::vector<double>& d_grid,
                                           const GridSpec& g, const Constants& c,
                                           const KernelBuildOptions& opts,
                                           const EigenOptions& eig) {
  if (d_grid.empty()) throw std::invalid_argument("empty displacement grid");
  for (double d : d_grid) {
    if (!(d >= 0.0)) throw std::invalid_argument("displacements must be >= 0");
  }
  // Fail on the memory guard before spawning any work.
  g.validate();
  p.with_displacement(d_grid.front()).validate();

  std::vector<PositivityRow> rows(d_grid.size());
  KernelBuildOptions inner = opts;
  inner.jobs = 1;
  parallel_for(d_grid.size(), opts.jobs, [&](std::size_t i) {
    const auto k = build_kernel_matrix(p.with_displacement(d_grid[i]), g, c, inner);
    const auto report = min_eigenvalue(k, eig);
    rows[i] = {d_grid[i], report.lambda_min, report.trace, report.verdict,
               report.tolerance};
  });
  return rows;
}

KernelMatrix wigner_to_kernel(const WignerGrid& w, const Constants& c) {
  w.validate();
  c.validate();
  const int nq = static_cast<int>(w.q_axis.size());
  const int np = static_cast<int>(w.p_axis.size());
  const int n = (nq + 1) / 2;  // kernel points at q indices 0, 2, 4, ...
  const double dq = w.dq();
  const double dp = w.dp();
  const double measure = 2.0 * dq;
  const double max_separation = 2.0 * dq * (n - 1);
  if (dp * max_separation / c.hbar > std::numbers::pi) {
    throw std::invalid_argument(
        "momentum grid too coarse: dp * max|x - x'| / hbar exceeds pi");
  }

  // Phase tables indexed by separation index s = i - j >= 0, separation 2 s dq.
  Eigen::MatrixXd cos_table(n, np), sin_table(n, np);
  for (int s = 0; s < n; ++s) {
    const double delta = 2.0 * dq * s;
    for (int t = 0; t < np; ++t) {
      const double phase = w.p_axis[t] * delta / c.hbar;
      cos_table(s, t) = std::cos(phase);
      sin_table(s, t) = std::sin(phase);
    }
  }

  KernelMatrix k;
  k.grid = GridSpec{w.q_axis[0], w.q_axis[2 * (n - 1)], n, 1};
  k.measure_weighted = true;
  k.real.resize(n, n);
  k.imag.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      // Midpoint of q[2i] and q[2j] is q[i + j].
      const auto row = w.values.row(i + j);
      const int s = i - j;
      const double re = row.dot(cos_table.row(s)) * dp * measure;
      const double im = row.dot(sin_table.row(s)) * dp * measure;
      k.real(i, j) = k.real(j, i) = re;
      k.imag(i, j) = im;
      k.imag(j, i) = -im;
    }
  }
  return k;
}

}  // namespace wwlab
