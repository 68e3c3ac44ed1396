#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "sped/frequency_grid.hpp"

namespace sped {

inline constexpr const char* kToolVersion = "0.1.0";

// Echo of everything needed to re-run a command bit-identically on the same
// build: parameters verbatim, tool version, seed, and the quadrature settings
// actually used.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;
  std::optional<std::uint64_t> seed;

  void set_quadrature(const FrequencyGrid& grid);
  void write(const std::string& path) const;

  nlohmann::ordered_json quadrature;
};

// path of the manifest that accompanies an output file.
std::string manifest_path_for(const std::string& output_path);

}  // namespace sped
