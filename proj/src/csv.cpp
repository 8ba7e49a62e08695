#include "tvp/csv.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tvp {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

std::string format_double(double v, int sig_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, v);
  return buf;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path.string());
  if (!line.empty() && line.front() == '\xEF' && line.size() >= 3)  // UTF-8 BOM
    line.erase(0, 3);
  CsvTable table;
  table.header = split_line(line);
  const std::size_t ncol = table.header.size();
  if (ncol == 0) throw std::runtime_error("read_csv: no columns in " + path.string());

  std::vector<double> buffer;
  std::size_t nrow = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    ++nrow;
    if (fields.size() != ncol) {
      std::ostringstream os;
      os << "read_csv: row " << nrow << " has " << fields.size() << " cells, expected " << ncol;
      throw std::runtime_error(os.str());
    }
    for (std::size_t j = 0; j < ncol; ++j) {
      double v;
      const auto& f = fields[j];
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
        std::ostringstream os;
        os << "read_csv: non-numeric cell at row " << nrow << ", column '" << table.header[j]
           << "' (value '" << f << "')";
        throw std::runtime_error(os.str());
      }
      buffer.push_back(v);
    }
  }
  table.values.resize(nrow, ncol);
  for (std::size_t i = 0; i < nrow; ++i)
    for (std::size_t j = 0; j < ncol; ++j) table.values(i, j) = buffer[i * ncol + j];
  return table;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values, int sig_digits) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
  for (std::size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << "\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      out << (j ? "," : "") << format_double(values(i, j), sig_digits);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

void write_draws_bin(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const Eigen::MatrixXd& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_draws_bin: cannot open " + path.string());
  out.write("TVPB", 4);
  const std::uint32_t version = 1;
  const std::uint64_t rows = values.rows(), cols = values.cols();
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&rows), 8);
  out.write(reinterpret_cast<const char*>(&cols), 8);
  for (const auto& name : header) {
    const std::uint32_t len = static_cast<std::uint32_t>(name.size());
    out.write(reinterpret_cast<const char*>(&len), 4);
    out.write(name.data(), len);
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i)
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double v = values(i, j);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  if (!out) throw std::runtime_error("write_draws_bin: write failed for " + path.string());
}

CsvTable read_draws_bin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_draws_bin: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "TVPB", 4) != 0)
    throw std::runtime_error("read_draws_bin: bad magic in " + path.string());
  std::uint32_t version = 0;
  std::uint64_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&cols), 8);
  if (!in || version != 1) throw std::runtime_error("read_draws_bin: unsupported frame version");
  CsvTable table;
  for (std::uint64_t j = 0; j < cols; ++j) {
    std::uint32_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 4);
    std::string name(len, '\0');
    in.read(name.data(), len);
    table.header.push_back(std::move(name));
  }
  table.values.resize(rows, cols);
  for (std::uint64_t i = 0; i < rows; ++i)
    for (std::uint64_t j = 0; j < cols; ++j) {
      double v;
      in.read(reinterpret_cast<char*>(&v), 8);
      table.values(i, j) = v;
    }
  if (!in) throw std::runtime_error("read_draws_bin: truncated file " + path.string());
  return table;
}

std::uint64_t hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("hash_file: cannot open " + path.string());
  std::uint64_t h = 14695981039346656037ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
    if (!in) break;
  }
  return h;
}

}  // namespace tvp
