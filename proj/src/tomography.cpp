#include "wwlab/tomography.hpp"

#include "wwlab/parallel.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace wwlab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double phi) {
  double r = std::fmod(phi, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

// Bilinear interpolation on the grid, zero outside it.
double bilinear(const WignerGrid& w, double q, double p) {
  const double u = (q - w.q_axis[0]) / w.dq();
  const double v = (p - w.p_axis[0]) / w.dp();
  const long nq = w.q_axis.size();
  const long np = w.p_axis.size();
  if (u < 0.0 || v < 0.0 || u > nq - 1 || v > np - 1) return 0.0;
  long i = static_cast<long>(u);
  long j = static_cast<long>(v);
  i = std::min(i, nq - 2);
  j = std::min(j, np - 2);
  const double fu = u - i;
  const double fv = v - j;
  return (1 - fu) * (1 - fv) * w.values(i, j) + fu * (1 - fv) * w.values(i + 1, j) +
         (1 - fu) * fv * w.values(i, j + 1) + fu * fv * w.values(i + 1, j + 1);
}

// (1 / 2 pi) int_{-wc}^{wc} |w| exp(i w s) dw.
double ramp_impulse(double s, double wc) {
  if (s == 0.0) return wc * wc / (2.0 * kPi);
  return (wc * std::sin(wc * s) / s + (std::cos(wc * s) - 1.0) / (s * s)) / kPi;
}

constexpr long kOversample = 4;

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

double QuadratureMarginal::integral() const {
  if (x_axis.size() < 2) return 0.0;
  const double dx = (x_axis[x_axis.size() - 1] - x_axis[0]) / (x_axis.size() - 1);
  return density.sum() * dx;
}

void MarginalSet::validate() const {
  if (marginals.size() < 2) {
    throw std::invalid_argument("inverse Radon transform needs at least 2 angles");
  }
  const auto& axis = marginals.front().x_axis;
  if (!is_uniform_axis(axis)) {
    throw std::invalid_argument("marginal x axis must be uniform");
  }
  for (std::size_t k = 0; k < marginals.size(); ++k) {
    const auto& m = marginals[k];
    if (!(m.phi >= 0.0 && m.phi < kPi)) {
      throw std::invalid_argument("marginal angles must lie in [0, pi)");
    }
    if (k > 0 && !(m.phi > marginals[k - 1].phi)) {
      throw std::invalid_argument("marginal angles must be strictly increasing");
    }
    if (m.x_axis.size() != axis.size() || !m.x_axis.isApprox(axis, 1e-12) ||
        m.density.size() != axis.size()) {
      throw std::invalid_argument("all marginals must share one x axis");
    }
  }
}

QuadratureMarginal radon_marginal(const WignerGrid& w, double phi) {
  w.validate();
  QuadratureMarginal m;
  m.phi = wrap_angle(phi);
  m.x_axis = w.q_axis;
  m.density.resize(m.x_axis.size());

  const double c = std::cos(m.phi);
  const double s = std::sin(m.phi);
  const double step = std::min(w.dq(), w.dp());
  // Half-length of the longest chord through the grid, measured from the origin.
  double reach = 0.0;
  for (double q : {w.q_axis[0], w.q_axis[w.q_axis.size() - 1]}) {
    for (double p : {w.p_axis[0], w.p_axis[w.p_axis.size() - 1]}) {
      reach = std::max(reach, std::hypot(q, p));
    }
  }
  const long half = static_cast<long>(std::ceil(reach / step));

  for (Eigen::Index i = 0; i < m.x_axis.size(); ++i) {
    const double x = m.x_axis[i];
    double sum = 0.0;
    for (long k = -half; k <= half; ++k) {
      const double t = k * step;
      sum += bilinear(w, x * c - t * s, x * s + t * c);
    }
    m.density[i] = std::max(0.0, sum * step);
  }
  return m;
}

MarginalSet marginal_set(const WignerGrid& w, int n_angles, unsigned jobs) {
  if (n_angles < 2) throw std::invalid_argument("need at least 2 angles");
  MarginalSet ms;
  ms.marginals.resize(n_angles);
  parallel_for(static_cast<std::size_t>(n_angles), jobs, [&](std::size_t k) {
    ms.marginals[k] = radon_marginal(w, k * kPi / n_angles);
  });
  return ms;
}

MarginalSet marginal_set(const std::function<double(double, double)>& density,
                         int n_angles, double lo, double hi, int n) {
  if (n_angles < 2) throw std::invalid_argument("need at least 2 angles");
  MarginalSet ms;
  const Eigen::VectorXd axis = uniform_axis(lo, hi, n);
  for (int k = 0; k < n_angles; ++k) {
    QuadratureMarginal m;
    m.phi = k * kPi / n_angles;
    m.x_axis = axis;
    m.density.resize(n);
    for (int i = 0; i < n; ++i) m.density[i] = density(m.phi, axis[i]);
    ms.marginals.push_back(std::move(m));
  }
  return ms;
}

WignerGrid inverse_radon(const MarginalSet& ms, const InverseRadonOptions& opts) {
  ms.validate();
  if (!(opts.cutoff > 0.0 && opts.cutoff <= 1.0)) {
    throw std::invalid_argument("ramp cutoff must be in (0, 1] of Nyquist");
  }
  const Eigen::VectorXd& axis = ms.marginals.front().x_axis;
  const long n = axis.size();
  const double x0 = axis[0];
  const double dx = (axis[n - 1] - axis[0]) / (n - 1);
  const double wc = opts.cutoff * kPi / dx;

  std::vector<double> cosines(ms.size()), sines(ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    cosines[k] = std::cos(ms.marginals[k].phi);
    sines[k] = std::sin(ms.marginals[k].phi);
  }

  // Filtered projections are not compactly supported, and the grid corners
  // project beyond the marginal axis. Extend the axis with zero samples so
  // that every projection s = q cos(phi) + p sin(phi) of the output grid is
  // covered.
  const double x_last = axis[n - 1];
  double s_lo = x0, s_hi = x_last;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    for (double q : {x0, x_last}) {
      for (double p : {x0, x_last}) {
        const double s = q * cosines[k] + p * sines[k];
        s_lo = std::min(s_lo, s);
        s_hi = std::max(s_hi, s);
      }
    }
  }
  const long pad_lo = static_cast<long>(std::ceil((x0 - s_lo) / dx - 1e-9));
  const long pad_hi = static_cast<long>(std::ceil((s_hi - x_last) / dx - 1e-9));
  const long n_ext = n + pad_lo + pad_hi;
  const double ext0 = x0 - pad_lo * dx;

  // The filtered projection is band-limited, so it is evaluated on a grid
  // kOversample times finer than the marginal axis before the linear
  // interpolation of the back-projection. Linear convolution over fine lags
  // -(m - 1)..(m - 1), done as a circular convolution of length >= 2 m - 1.
  const long m = kOversample * (n_ext - 1) + 1;
  const double fx = dx / kOversample;
  const std::size_t len = next_pow2(static_cast<std::size_t>(2 * m));
  std::vector<double> impulse(len, 0.0);
  for (long lag = -(m - 1); lag <= m - 1; ++lag) {
    impulse[(lag + static_cast<long>(len)) % len] = ramp_impulse(lag * fx, wc) * dx;
  }
  Eigen::FFT<double> fft_plan;
  std::vector<std::complex<double>> filter;
  fft_plan.fwd(filter, impulse);

  const std::size_t n_angles = ms.size();
  std::vector<Eigen::VectorXd> filtered(n_angles);
  parallel_for(n_angles, opts.jobs, [&](std::size_t k) {
    Eigen::FFT<double> fft;
    std::vector<double> padded(len, 0.0);
    const auto& dens = ms.marginals[k].density;
    for (long i = 0; i < n; ++i) padded[kOversample * (pad_lo + i)] = dens[i];
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, padded);
    for (std::size_t f = 0; f < len; ++f) spectrum[f] *= filter[f];
    std::vector<double> back;
    fft.inv(back, spectrum);
    filtered[k].resize(m);
    for (long i = 0; i < m; ++i) filtered[k][i] = back[i];
  });

  WignerGrid w;
  w.q_axis = axis;
  w.p_axis = axis;
  w.values.resize(n, n);
  // W = (1 / 2 pi) int_0^pi dphi g_phi(q cos phi + p sin phi), with g the
  // filtered marginal and the angle integral as a Riemann sum of pi / N.
  const double weight = 1.0 / (2.0 * n_angles);
  parallel_for(static_cast<std::size_t>(n), opts.jobs, [&](std::size_t i) {
    for (long j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n_angles; ++k) {
        const double s = axis[i] * cosines[k] + axis[j] * sines[k];
        const double u = (s - ext0) / fx;
        if (u < 0.0 || u > m - 1) continue;
        long idx = std::min(static_cast<long>(u), m - 2);
        const double frac = u - idx;
        acc += (1.0 - frac) * filtered[k][idx] + frac * filtered[k][idx + 1];
      }
      w.values(i, j) = weight * acc;
    }
  });
  return w;
}

double max_abs_error(const WignerGrid& w,
                     const std::function<double(double, double)>& exact) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < w.q_axis.size(); ++i) {
    for (Eigen::Index j = 0; j < w.p_axis.size(); ++j) {
      worst = std::max(worst, std::abs(w.values(i, j) - exact(w.q_axis[i], w.p_axis[j])));
    }
  }
  return worst;
}

double grid_min(const WignerGrid& w) { return w.values.minCoeff(); }

bool reconstructed_nonnegative(const WignerGrid& w, double floor) {
  return grid_min(w) >= -floor;
}

OperatorReconstruction reconstruct_operator(const MarginalSet& ms,
                                            const Constants& c,
                                            const ReconstructionOptions& opts) {
  OperatorReconstruction out;
  out.wigner = inverse_radon(ms, opts.radon);
  KernelMatrix kernel = wigner_to_kernel(out.wigner, c);
  out.raw_trace = kernel.trace();
  if (!(std::abs(out.raw_trace) > 0.0)) {
    // A vanishing trace cannot be normalized; report the raw kernel.
    out.positivity = min_eigenvalue(kernel, opts.eig);
    return out;
  }
  kernel.real /= out.raw_trace;
  kernel.imag /= out.raw_trace;
  out.positivity = min_eigenvalue(kernel, opts.eig);
  return out;
}

}  // namespace wwlab
