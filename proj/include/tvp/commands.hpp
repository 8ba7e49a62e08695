#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "tvp/config.hpp"

namespace tvp {

struct RunPaths {
  std::filesystem::path config;
  std::filesystem::path data;  // fit / forecast only
  std::filesystem::path out;
};

int cmd_simulate(const Config& cfg, const RunPaths& paths, std::optional<std::uint64_t> seed);
int cmd_fit(const Config& cfg, const RunPaths& paths, std::uint64_t seed, int threads);
int cmd_forecast(const Config& cfg, const RunPaths& paths, std::uint64_t seed, int threads);
int cmd_simstudy(const Config& cfg, const RunPaths& paths, std::uint64_t seed, int threads);

}  // namespace tvp
