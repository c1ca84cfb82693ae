#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wwlab/fock.hpp"
#include "wwlab/weyl_kernel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

using namespace wwlab;

namespace {

constexpr double kPi = std::numbers::pi;

// 2-D Gaussian with covariance [[s, k], [k, s]] centred at (a, b).
double gauss2(double x1, double x2, double a, double b, double s, double k) {
  const double det = s * s - k * k;
  const double u = x1 - a, v = x2 - b;
  return std::exp(-0.5 * (s * (u * u + v * v) - 2 * k * u * v) / det) /
         (2 * kPi * std::sqrt(det));
}

// Position marginal of the displaced pair.
double pair_marginal(const Vec2& x, const DisplacedPairParams& p) {
  return 0.5 * (gauss2(x[0], x[1], p.d, -p.d, p.s_q, p.k_q) +
                gauss2(x[0], x[1], -p.d, p.d, p.s_q, p.k_q));
}

double max_asymmetry(const Eigen::MatrixXd& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("grid spec") {
  GridSpec g;
  CHECK(g.lo == -8.0);
  CHECK(g.hi == 8.0);
  CHECK(g.n == 50);
  CHECK(g.matrix_dim() == 2500);
  CHECK(g.spacing() == doctest::Approx(16.0 / 49));
  CHECK(g.point(49) == doctest::Approx(8.0));
  CHECK_THROWS_AS((GridSpec{1.0, 1.0, 10, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 1, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 5, 0}.validate()), std::invalid_argument);
}

TEST_CASE("kernel element") {
  const Constants c;
  const auto p = representational_params(1.0);
  const double norm = 1.0 / (2 * kPi * std::sqrt(0.16));

  SUBCASE("diagonal at a component mean") {
    const Vec2 x = p.q_offset();
    // The other component sits at separation 2 d sqrt 2 along (1, -1).
    const Vec2 sep(2 * p.d, -2 * p.d);
    const double other = norm * std::exp(-0.5 * sep.dot(p.q0().inverse() * sep));
    CHECK(kernel_element(x, x, p, c) == doctest::Approx(0.5 * (norm + other)).epsilon(1e-14));
  }
  SUBCASE("diagonal equals the position marginal") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.5);
    for (int t = 0; t < 100; ++t) {
      const Vec2 x(n(rng), n(rng));
      CHECK(kernel_element(x, x, p, c) == doctest::Approx(pair_marginal(x, p)).epsilon(1e-13));
    }
  }
  SUBCASE("symmetric under exchange") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 2.0);
    for (int t = 0; t < 100; ++t) {
      const Vec2 x(n(rng), n(rng)), y(n(rng), n(rng));
      CHECK(kernel_element(x, y, p, c) == kernel_element(y, x, p, c));
    }
  }
  SUBCASE("off-diagonal coherence factor") {
    const Vec2 x(0.3, -0.2), y(-0.4, 0.5);
    const Vec2 m = 0.5 * (x + y), delta = x - y;
    const double ref = pair_marginal(m, p) * std::exp(-0.5 * delta.dot(p.p0() * delta));
    CHECK(kernel_element(x, y, p, c) == doctest::Approx(ref).epsilon(1e-13));
    const double ref2 = pair_marginal(m, p) * std::exp(-0.125 * delta.dot(p.p0() * delta));
    CHECK(kernel_element(x, y, p, Constants{2.0}) == doctest::Approx(ref2).epsilon(1e-13));
  }
  SUBCASE("singular Q0") {
    DisplacedPairParams bad = p;
    bad.k_q = bad.s_q;
    CHECK_THROWS_AS(kernel_element(Vec2::Zero(), Vec2::Zero(), bad, c), std::invalid_argument);
  }
}

TEST_CASE("kernel matrix assembly") {
  const Constants c;
  SUBCASE("two-point smoke grid") {
    const auto k = build_kernel_matrix(representational_params(0.5), GridSpec{-1, 1, 2, 2}, c);
    CHECK(k.size() == 4);
    CHECK_FALSE(k.is_complex());
    CHECK(k.measure_weighted);
    const double h2 = 4.0;
    CHECK(k.real(1, 2) == doctest::Approx(h2 * kernel_element(Vec2(-1, 1), Vec2(1, -1),
                                                               representational_params(0.5), c)));
  }
  SUBCASE("flattening is i1 * n + i2") {
    const GridSpec g{-2, 2, 5, 2};
    const auto p = hybrid_params(0.3);
    const auto k = build_kernel_matrix(p, g, c);
    const Vec2 x(g.point(1), g.point(3)), y(g.point(4), g.point(0));
    CHECK(k.real(1 * 5 + 3, 4 * 5 + 0) ==
          doctest::Approx(kernel_element(x, y, p, c) * g.spacing() * g.spacing()));
  }
  SUBCASE("only two configuration axes") {
    CHECK_THROWS_AS(build_kernel_matrix(representational_params(), GridSpec{-1, 1, 4, 1}, c),
                    std::invalid_argument);
  }
  SUBCASE("memory guard") {
    KernelBuildOptions small;
    small.max_dim = 16;
    CHECK_THROWS_AS(build_kernel_matrix(representational_params(), GridSpec{-1, 1, 5, 2}, c, small),
                    std::length_error);
    try {
      build_kernel_matrix(representational_params(), GridSpec{-8, 8, 101, 2}, c);
      FAIL("guard did not trigger");
    } catch (const std::length_error& e) {
      CHECK(std::string(e.what()).find("n <= 100") != std::string::npos);
    }
    small.allow_large = true;
    CHECK(build_kernel_matrix(representational_params(), GridSpec{-1, 1, 5, 2}, c, small).size() == 25);
  }
  SUBCASE("threads do not change the matrix") {
    KernelBuildOptions threaded;
    threaded.jobs = 3;
    const GridSpec g{-4, 4, 12, 2};
    const auto a = build_kernel_matrix(representational_params(1.0), g, c);
    const auto b = build_kernel_matrix(representational_params(1.0), g, c, threaded);
    CHECK(a.real == b.real);
  }
}

TEST_CASE("measure-weighted trace and diagonal") {
  const Constants c;
  for (const auto& base : {representational_params(), hybrid_params()}) {
    for (double d : {0.0, 1.0, 2.0}) {
      const auto p = base.with_displacement(d);
      const GridSpec g;
      const auto k = build_kernel_matrix(p, g, c);
      CHECK(max_asymmetry(k.real) <= 1e-10);
      CHECK(std::abs(k.trace() - 1.0) <= 1e-3);
      const double h2 = g.spacing() * g.spacing();
      double worst = 0.0;
      for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) {
          const Vec2 x(g.point(a), g.point(b));
          worst = std::max(worst, std::abs(k.real(a * g.n + b, a * g.n + b) / h2 -
                                           pair_marginal(x, p)));
        }
      }
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("minimum eigenvalue") {
  KernelMatrix k;
  k.real = 0.25 * Eigen::MatrixXd::Identity(6, 6);
  auto r = min_eigenvalue(k, {.rel_tolerance = 1e-8, .keep_spectrum = true});
  CHECK(r.lambda_min == doctest::Approx(0.25));
  CHECK(r.verdict == Verdict::Positive);
  CHECK(r.trace == doctest::Approx(1.5));
  REQUIRE(r.spectrum);
  CHECK(r.spectrum->size() == 6);

  k.real(0, 0) = -1e-3;
  r = min_eigenvalue(k);
  CHECK(r.lambda_min == doctest::Approx(-1e-3));
  CHECK(r.verdict == Verdict::NonPositive);
  CHECK(r.spectral_norm == doctest::Approx(0.25));
  CHECK(r.tolerance == doctest::Approx(0.25e-8));
  CHECK_FALSE(r.spectrum);
  CHECK(min_eigenvalue(k, {.rel_tolerance = 1e-2}).verdict == Verdict::Positive);

  // A small asymmetric perturbation is symmetrized away.
  k.real(0, 1) = 0.1;
  CHECK(min_eigenvalue(k).lambda_min ==
        doctest::Approx(0.5 * (0.25 - 1e-3) - std::sqrt(std::pow(0.5 * (0.25 + 1e-3), 2) + 0.0025)));

  CHECK(to_string(Verdict::Positive) == "POSITIVE");
  CHECK(to_string(Verdict::NonPositive) == "NON_POSITIVE");
  CHECK_THROWS_AS(min_eigenvalue(KernelMatrix{}), std::invalid_argument);
}

TEST_CASE("kernel negativity and positivity at the default lattice") {
  const Constants c;
  const auto neg = min_eigenvalue(build_kernel_matrix(representational_params(1.0), GridSpec{}, c));
  CHECK(neg.lambda_min < 0.0);
  CHECK(neg.verdict == Verdict::NonPositive);

  const auto pos = min_eigenvalue(build_kernel_matrix(hybrid_params(0.5), GridSpec{}, c));
  CHECK(pos.verdict == Verdict::Positive);
  CHECK(pos.lambda_min >= -1e-8 * pos.spectral_norm);
}

TEST_CASE("hybrid scan stays positive up to d = 0.9") {
  const auto rows = positivity_scan(hybrid_params(), {0.0, 0.45, 0.9}, GridSpec{}, Constants{});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.verdict == Verdict::Positive);
    CHECK(r.lambda_min >= -r.tolerance);
    CHECK(std::abs(r.trace - 1.0) <= 1e-3);
  }
  CHECK(rows[1].d == 0.45);
  CHECK_THROWS_AS(positivity_scan(hybrid_params(), {}, GridSpec{}, Constants{}),
                  std::invalid_argument);
}

TEST_CASE("verdicts are stable under lattice refinement") {
  const Constants c;
  for (int n : {40, 50, 60}) {
    const GridSpec g{-8, 8, n, 2};
    CAPTURE(n);
    CHECK(min_eigenvalue(build_kernel_matrix(representational_params(1.0), g, c)).verdict ==
          Verdict::NonPositive);
    CHECK(min_eigenvalue(build_kernel_matrix(hybrid_params(0.5), g, c)).verdict ==
          Verdict::Positive);
  }
}

TEST_CASE("smallest eigenvalue converges under refinement") {
  const Constants c;
  const double a = min_eigenvalue(build_kernel_matrix(representational_params(1.0), GridSpec{-8, 8, 50, 2}, c)).lambda_min;
  const double b = min_eigenvalue(build_kernel_matrix(representational_params(1.0), GridSpec{-8, 8, 70, 2}, c)).lambda_min;
  CAPTURE(a);
  CAPTURE(b);
  CHECK(std::abs(b - a) < 0.1 * std::abs(a));
}

TEST_CASE("kernel from a Wigner grid") {
  SUBCASE("vacuum") {
    for (double hbar : {1.0, 2.0}) {
      const Constants c{hbar};
      const auto w = sample_wigner([&](double q, double p) { return vacuum_wigner(q, p, c); },
                                   -8, 8, 257);
      const auto k = wigner_to_kernel(w, c);
      REQUIRE(k.size() == 129);
      CHECK(k.is_complex());
      const double measure = 2 * w.dq();
      double worst = 0.0;
      for (int i = 0; i < k.size(); ++i) {
        for (int j = 0; j < k.size(); ++j) {
          const double x = w.q_axis[2 * i], y = w.q_axis[2 * j];
          const double ref = std::exp(-(x * x + y * y) / (2 * hbar)) / std::sqrt(kPi * hbar);
          worst = std::max(worst, std::abs(k.real(i, j) / measure - ref));
        }
      }
      CHECK(worst <= 1e-10);
      CHECK(k.imag.cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(std::abs(k.trace() - 1.0) <= 1e-3);
      const auto r = min_eigenvalue(k);
      CHECK(r.lambda_min >= -1e-8);
      CHECK(r.verdict == Verdict::Positive);
    }
  }
  SUBCASE("single photon projector") {
    const Constants c;
    const auto w = sample_wigner([&](double q, double p) { return fock1_wigner(q, p, c); },
                                 -8, 8, 257);
    const auto k = wigner_to_kernel(w, c);
    const auto r = min_eigenvalue(k, {.keep_spectrum = true});
    const auto& s = *r.spectrum;
    CHECK(std::abs(k.trace() - 1.0) <= 1e-3);
    CHECK(s[s.size() - 1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(s[s.size() - 2]) <= 1e-6);
    CHECK(std::abs(s[0]) <= 1e-6);
  }
  SUBCASE("displaced vacuum has an imaginary part") {
    const Constants c;
    const double q0 = 0.7, p0 = -1.2;
    const auto w = sample_wigner(
        [&](double q, double p) { return vacuum_wigner(q - q0, p - p0, c); }, -8, 8, 257);
    const auto k = wigner_to_kernel(w, c);
    const double measure = 2 * w.dq();
    double worst = 0.0;
    for (int i = 0; i < k.size(); i += 3) {
      for (int j = 0; j < k.size(); j += 3) {
        const double x = w.q_axis[2 * i], y = w.q_axis[2 * j];
        const double mag = std::exp(-((x - q0) * (x - q0) + (y - q0) * (y - q0)) / 2) /
                           std::sqrt(kPi);
        worst = std::max(worst, std::abs(k.real(i, j) / measure - mag * std::cos(p0 * (x - y))));
        worst = std::max(worst, std::abs(k.imag(i, j) / measure - mag * std::sin(p0 * (x - y))));
      }
    }
    CHECK(worst <= 1e-10);
    CHECK(max_asymmetry(k.real) == 0.0);
    CHECK((k.imag + k.imag.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const auto r = min_eigenvalue(k, {.keep_spectrum = true});
    CHECK(r.verdict == Verdict::Positive);
    CHECK((*r.spectrum)[k.size() - 1] == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("zero Wigner function") {
    const auto w = sample_wigner([](double, double) { return 0.0; }, -4, 4, 33);
    const auto k = wigner_to_kernel(w, Constants{});
    CHECK(k.real.isZero(0.0));
    CHECK(k.imag.isZero(0.0));
  }
  SUBCASE("momentum grid too coarse") {
    WignerGrid w;
    w.q_axis = uniform_axis(-6, 6, 255);
    w.p_axis = uniform_axis(-6, 6, 20);
    w.values = Eigen::MatrixXd::Zero(255, 20);
    CHECK_THROWS_AS(wigner_to_kernel(w, Constants{}), std::invalid_argument);
    CHECK_NOTHROW(wigner_to_kernel(w, Constants{4.0}));
  }
}
