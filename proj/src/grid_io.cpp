#include "wwlab/grid_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wwlab {

namespace {

std::runtime_error io_error(const std::filesystem::path& path, const std::string& what) {
  return std::runtime_error(path.string() + ": " + what);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct BinaryHeader {
  std::string kind;
  long n = 0;
  double lo = 0.0;
  double hi = 0.0;
  int dims = 0;
  bool complex = false;
};

void write_header(std::ostream& out, const BinaryHeader& h) {
  out << "WWLAB kind=" << h.kind << " n=" << h.n << " lo=" << format_double(h.lo)
      << " hi=" << format_double(h.hi) << " dims=" << h.dims
      << " complex=" << (h.complex ? 1 : 0) << '\n';
}

BinaryHeader read_header(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw io_error(path, "missing header line");
  std::istringstream words(line);
  std::string magic;
  words >> magic;
  if (magic != "WWLAB") throw io_error(path, "not a WWLAB binary file");
  std::map<std::string, std::string> kv;
  std::string token;
  while (words >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw io_error(path, "malformed header token " + token);
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"kind", "n", "lo", "hi", "dims", "complex"}) {
    if (!kv.count(key)) throw io_error(path, std::string("header lacks ") + key);
  }
  BinaryHeader h;
  h.kind = kv["kind"];
  h.n = std::stol(kv["n"]);
  h.lo = parse_double(kv["lo"]);
  h.hi = parse_double(kv["hi"]);
  h.dims = std::stoi(kv["dims"]);
  h.complex = kv["complex"] == "1";
  if (h.n < 2 || h.dims < 1 || !(h.lo < h.hi)) throw io_error(path, "invalid header values");
  return h;
}

void write_block(std::ostream& out, const Eigen::MatrixXd& m) {
  // Eigen is column-major; emit rows.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  out.write(reinterpret_cast<const char*>(rm.data()),
            static_cast<std::streamsize>(rm.size() * sizeof(double)));
}

Eigen::MatrixXd read_block(std::istream& in, long rows, long cols,
                           const std::filesystem::path& path) {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(rows, cols);
  in.read(reinterpret_cast<char*>(rm.data()),
          static_cast<std::streamsize>(rm.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(rm.size() * sizeof(double))) {
    throw io_error(path, "truncated data block");
  }
  return rm;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw io_error(path, "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw io_error(path, "cannot open for reading");
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

double parse_double(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  const bool overflow = errno == ERANGE && std::isinf(v);
  if (s.empty() || end != s.c_str() + s.size() || overflow) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::string to_csv_string(const CsvTable& table) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto out = open_out(path, std::ios::out | std::ios::trunc);
  out << to_csv_string(table);
  if (!out) throw io_error(path, "write failed");
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw io_error(path, "empty CSV file");
  t.header = split_commas(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_commas(line);
    if (fields.size() != t.header.size()) {
      throw io_error(path, "row width does not match header");
    }
    t.rows.push_back(std::move(fields));
  }
  return t;
}

void write_marginals(const std::filesystem::path& path, const MarginalSet& ms) {
  CsvTable t;
  t.header = {"phi", "x", "density"};
  for (const auto& m : ms.marginals) {
    for (Eigen::Index i = 0; i < m.x_axis.size(); ++i) {
      t.rows.push_back({format_double(m.phi), format_double(m.x_axis[i]),
                        format_double(m.density[i])});
    }
  }
  write_csv(path, t);
}

MarginalSet read_marginals(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  if (t.header != std::vector<std::string>{"phi", "x", "density"}) {
    throw io_error(path, "expected columns phi,x,density");
  }
  MarginalSet ms;
  std::vector<double> xs, ds;
  auto flush = [&](double phi) {
    QuadratureMarginal m;
    m.phi = phi;
    m.x_axis = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
    m.density = Eigen::Map<Eigen::VectorXd>(ds.data(), ds.size());
    ms.marginals.push_back(std::move(m));
    xs.clear();
    ds.clear();
  };
  double current = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double phi = parse_double(t.rows[r][0]);
    if (r > 0 && phi != current) flush(current);
    current = phi;
    xs.push_back(parse_double(t.rows[r][1]));
    ds.push_back(parse_double(t.rows[r][2]));
  }
  if (!xs.empty()) flush(current);
  try {
    ms.validate();
  } catch (const std::invalid_argument& e) {
    throw io_error(path, e.what());
  }
  return ms;
}

void write_kernel(const std::filesystem::path& path, const KernelMatrix& k) {
  auto out = open_out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  write_header(out, {"kernel", k.grid.n, k.grid.lo, k.grid.hi, k.grid.dims, k.is_complex()});
  write_block(out, k.real);
  if (k.is_complex()) write_block(out, k.imag);
  if (!out) throw io_error(path, "write failed");
}

KernelMatrix read_kernel(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  const auto h = read_header(in, path);
  if (h.kind != "kernel") throw io_error(path, "expected kind=kernel");
  KernelMatrix k;
  k.grid = GridSpec{h.lo, h.hi, static_cast<int>(h.n), h.dims};
  const long m = k.grid.matrix_dim();
  k.real = read_block(in, m, m, path);
  if (h.complex) k.imag = read_block(in, m, m, path);
  return k;
}

void write_wigner(const std::filesystem::path& path, const WignerGrid& w) {
  w.validate();
  if (w.q_axis.size() != w.p_axis.size() || !w.q_axis.isApprox(w.p_axis, 1e-12)) {
    throw io_error(path, "only square grids with identical axes can be written");
  }
  auto out = open_out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  write_header(out, {"wigner", static_cast<long>(w.q_axis.size()), w.q_axis[0],
                     w.q_axis[w.q_axis.size() - 1], 2, false});
  write_block(out, w.values);
  if (!out) throw io_error(path, "write failed");
}

WignerGrid read_wigner(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  const auto h = read_header(in, path);
  if (h.kind != "wigner" || h.dims != 2 || h.complex) {
    throw io_error(path, "expected kind=wigner dims=2 complex=0");
  }
  WignerGrid w;
  w.q_axis = uniform_axis(h.lo, h.hi, static_cast<int>(h.n));
  w.p_axis = w.q_axis;
  w.values = read_block(in, h.n, h.n, path);
  return w;
}

}  // namespace wwlab
