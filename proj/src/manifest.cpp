#include "sped/manifest.hpp"

#include <chrono>
#include <ctime>

#include "sped/csv.hpp"

namespace sped {

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void RunManifest::set_quadrature(const FrequencyGrid& grid) {
  quadrature = {{"cutoff", grid.cutoff},
                {"dt", grid.dt},
                {"nodes", grid.size()},
                {"tail_bound", grid.tail_bound},
                {"oscillation_scale", grid.oscillation_scale},
                {"tolerance", grid.tolerance}};
}

void RunManifest::write(const std::string& path) const {
  nlohmann::ordered_json doc;
  doc["tool"] = "sped";
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["parameters"] = parameters;
  if (seed) doc["seed"] = *seed;
  if (!quadrature.is_null()) doc["quadrature"] = quadrature;
  doc["timestamp_utc"] = utc_timestamp();
  write_text_file(path, doc.dump(2) + "\n");
}

std::string manifest_path_for(const std::string& output_path) {
  return output_path + ".manifest.json";
}

}  // namespace sped
