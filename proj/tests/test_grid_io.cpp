#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wwlab/fock.hpp"
#include "wwlab/grid_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace wwlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "wwlab_test_grid_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double v = u(rng) * std::pow(10.0, (t % 40) - 20);
    CHECK(parse_double(format_double(v)) == v);
  }
  for (double v : {0.0, -0.0, 0.1, 1.0 / 3.0, std::numeric_limits<double>::denorm_min(),
                   std::numeric_limits<double>::max()}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.2) == "0.20000000000000001");
  CHECK(format_bool(true) == "true");
  CHECK(parse_bool("false") == false);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1e999"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bool("True"), std::invalid_argument);
}

TEST_CASE("CSV round trip") {
  CsvTable t;
  t.header = {"d", "nu_min", "verdict", "note"};
  t.rows = {{format_double(0.1), format_double(1.0 / 7), "POSITIVE", ""},
            {format_double(2.0), format_double(-3e-17), "NON_POSITIVE", "x"}};
  const auto path = scratch("table.csv");
  write_csv(path, t);
  const auto back = read_csv(path);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(to_csv_string(t).rfind("d,nu_min,verdict,note\n", 0) == 0);

  {
    std::ofstream bad(scratch("bad.csv"));
    bad << "a,b\n1,2,3\n";
  }
  CHECK_THROWS_AS(read_csv(scratch("bad.csv")), std::runtime_error);
  try {
    read_csv(scratch("missing.csv"));
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("missing.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(write_csv(scratch("no_such_dir") / "x.csv", t), std::runtime_error);
}

TEST_CASE("kernel binary round trip") {
  KernelMatrix k = build_kernel_matrix(representational_params(0.5), GridSpec{-3, 3, 6, 2}, Constants{});
  const auto path = scratch("kernel.bin");
  write_kernel(path, k);
  const auto back = read_kernel(path);
  CHECK(back.real == k.real);
  CHECK_FALSE(back.is_complex());
  CHECK(back.grid.n == 6);
  CHECK(back.grid.dims == 2);
  CHECK(back.grid.lo == -3.0);

  std::ifstream in(path, std::ios::binary);
  std::string header;
  std::getline(in, header);
  CHECK(header == "WWLAB kind=kernel n=6 lo=-3 hi=3 dims=2 complex=0");
  CHECK(fs::file_size(path) == header.size() + 1 + 36 * 36 * sizeof(double));
  // Row-major: the second stored value is entry (0, 1).
  in.seekg(static_cast<std::streamoff>(header.size() + 1 + sizeof(double)));
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  CHECK(v == k.real(0, 1));

  const auto w = sample_wigner([](double q, double p) { return vacuum_wigner(q - 0.5, p + 1, Constants{}); },
                               -5, 5, 41);
  const auto kc = wigner_to_kernel(w, Constants{});
  write_kernel(path, kc);
  const auto backc = read_kernel(path);
  CHECK(backc.is_complex());
  CHECK(backc.real == kc.real);
  CHECK(backc.imag == kc.imag);
  CHECK(backc.grid.dims == 1);
}

TEST_CASE("Wigner grid binary round trip") {
  const auto w = sample_wigner([](double q, double p) { return fock1_wigner(q, p, Constants{}); },
                               -6, 6, 64);
  const auto path = scratch("wigner.bin");
  write_wigner(path, w);
  const auto back = read_wigner(path);
  CHECK(back.values == w.values);
  CHECK(back.q_axis.isApprox(w.q_axis, 1e-15));
  CHECK(back.p_axis.isApprox(w.p_axis, 1e-15));

  WignerGrid rect = w;
  rect.p_axis = uniform_axis(-3, 3, 64);
  CHECK_THROWS_AS(write_wigner(path, rect), std::runtime_error);

  {
    std::ofstream bad(scratch("truncated.bin"), std::ios::binary);
    bad << "WWLAB kind=wigner n=4 lo=-1 hi=1 dims=2 complex=0\n";
    const double z = 0.0;
    bad.write(reinterpret_cast<const char*>(&z), sizeof z);
  }
  CHECK_THROWS_AS(read_wigner(scratch("truncated.bin")), std::runtime_error);
  {
    std::ofstream bad(scratch("magic.bin"), std::ios::binary);
    bad << "NOPE kind=wigner\n";
  }
  CHECK_THROWS_AS(read_wigner(scratch("magic.bin")), std::runtime_error);
  CHECK_THROWS_AS(read_kernel(path), std::runtime_error);
}

TEST_CASE("marginal set CSV round trip") {
  const auto w = sample_wigner([](double q, double p) { return vacuum_wigner(q, p, Constants{}); },
                               -5, 5, 32);
  const auto ms = marginal_set(w, 6);
  const auto path = scratch("marginals.csv");
  write_marginals(path, ms);
  const auto back = read_marginals(path);
  REQUIRE(back.size() == ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    CHECK(back.marginals[k].phi == ms.marginals[k].phi);
    CHECK(back.marginals[k].x_axis == ms.marginals[k].x_axis);
    CHECK(back.marginals[k].density == ms.marginals[k].density);
  }
  const auto t = read_csv(path);
  CHECK(t.header == std::vector<std::string>{"phi", "x", "density"});
  CHECK(t.rows.size() == 6 * 32);

  {
    std::ofstream bad(scratch("one_angle.csv"));
    bad << "phi,x,density\n0,0,1\n0,1,1\n";
  }
  CHECK_THROWS_AS(read_marginals(scratch("one_angle.csv")), std::runtime_error);
}
