#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tvp/config.hpp"
#include "tvp/csv.hpp"
#include "tvp/rng.hpp"

using namespace tvp;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / "tvp_io_tests";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("csv round-trip at 17 significant digits") {
  Rng rng(77);
  Eigen::MatrixXd m(23, 4);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = draw_normal(rng) * std::pow(10.0, j - 2);
  const auto path = scratch_dir() / "round.csv";
  write_csv(path, {"a", "b", "c", "d"}, m, 17);
  const auto back = read_csv(path);
  CHECK(back.header == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(back.values.rows() == m.rows());
  CHECK((back.values - m).cwiseAbs().maxCoeff() == 0.0);  // %.17g round-trips exactly
}

TEST_CASE("csv parse errors name the cell") {
  const auto path = scratch_dir() / "bad.csv";
  {
    std::ofstream f(path);
    f << "y,x\n1.0,2.0\n3.0,oops\n";
  }
  CHECK_THROWS_WITH_AS(read_csv(path),
                       "read_csv: non-numeric cell at row 2, column 'x' (value 'oops')",
                       std::runtime_error);
}

TEST_CASE("binary frame round-trip") {
  Rng rng(13);
  Eigen::MatrixXd m(11, 3);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = draw_normal(rng);
  const auto path = scratch_dir() / "frame.bin";
  write_draws_bin(path, {"u", "v", "w"}, m);
  const auto back = read_draws_bin(path);
  CHECK(back.header == std::vector<std::string>{"u", "v", "w"});
  CHECK((back.values - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("file hash is stable and content-sensitive") {
  const auto p1 = scratch_dir() / "h1.txt";
  const auto p2 = scratch_dir() / "h2.txt";
  {
    std::ofstream a(p1), b(p2);
    a << "abc";
    b << "abd";
  }
  CHECK(hash_file(p1) == hash_file(p1));
  CHECK(hash_file(p1) != hash_file(p2));
}

TEST_CASE("config parsing") {
  const auto cfg = Config::parse_string(R"(
# comment
sim.d = 3
sim.T = 200          # trailing comment
sim.beta = [1.5, -0.3, 0]
prior.variant = "double_gamma"
model.sv = false
name = bare_string

[sampler]
n_draws = 1000
adapt_mh = true
)");
  CHECK(cfg.get_int("sim.d") == 3);
  CHECK(cfg.get_doubles("sim.beta") == std::vector<double>{1.5, -0.3, 0.0});
  CHECK(cfg.get_string("prior.variant") == "double_gamma");
  CHECK(cfg.get_bool("model.sv") == false);
  CHECK(cfg.get_string("name") == "bare_string");
  CHECK(cfg.get_int("sampler.n_draws") == 1000);
  CHECK(cfg.get_bool("sampler.adapt_mh") == true);
  CHECK(cfg.get_or("sampler.thin", 1) == 1);
  CHECK_THROWS_WITH_AS(cfg.get_double("missing.key"), "config: missing key 'missing.key'",
                       std::runtime_error);
  CHECK_THROWS_AS(cfg.get_int("sim.beta"), std::runtime_error);
  CHECK_THROWS_AS(Config::parse_string("just words\n"), std::runtime_error);
}

}  // TEST_SUITE
