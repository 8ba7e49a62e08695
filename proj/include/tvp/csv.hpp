#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tvp {

struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

// Comma-separated, UTF-8, one header row, numeric body; missing values are
// forbidden. Parse errors report the 1-based row and the column name.
CsvTable read_csv(const std::filesystem::path& path);

// sig_digits: 17 for draw files (round-trip exact), 4 for human tables.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values, int sig_digits);

// Framed binary draws: magic "TVPB", u32 version, u64 rows, u64 cols,
// length-prefixed column names, then row-major little-endian f64.
void write_draws_bin(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const Eigen::MatrixXd& values);
CsvTable read_draws_bin(const std::filesystem::path& path);

// FNV-1a over the raw file bytes; recorded in run metadata.
std::uint64_t hash_file(const std::filesystem::path& path);

std::string format_double(double v, int sig_digits);

}  // namespace tvp
