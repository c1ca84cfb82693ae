#pragma once

// CSV tables and the flat binary format for kernels and Wigner grids.
//
// Binary layout: one ASCII header line
//   WWLAB kind=<kernel|wigner> n=<n> lo=<lo> hi=<hi> dims=<dims> complex=<0|1>
// terminated by '\n', followed by row-major 64-bit IEEE doubles in host byte
// order. Kernels store the real block and, when complex=1, the imaginary block
// after it. Wigner grids are n x n with both axes spanning [lo, hi] and dims=2.

#include "wwlab/tomography.hpp"
#include "wwlab/weyl_kernel.hpp"
#include "wwlab/wigner_grid.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace wwlab {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits, '.' decimal point; round-trips through strtod.
std::string format_double(double v);
std::string format_bool(bool v);
double parse_double(const std::string& s);
bool parse_bool(const std::string& s);

/// Comma-delimited with a header row. I/O failures throw std::runtime_error
/// naming the path.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);
std::string to_csv_string(const CsvTable& table);

void write_kernel(const std::filesystem::path& path, const KernelMatrix& k);
KernelMatrix read_kernel(const std::filesystem::path& path);

/// Long format, one row per sample: phi, x, density. Rows of one angle are
/// contiguous and angles appear in increasing order.
void write_marginals(const std::filesystem::path& path, const MarginalSet& ms);
MarginalSet read_marginals(const std::filesystem::path& path);

/// Requires a square grid with identical q and p axes.
void write_wigner(const std::filesystem::path& path, const WignerGrid& w);
WignerGrid read_wigner(const std::filesystem::path& path);

}  // namespace wwlab
