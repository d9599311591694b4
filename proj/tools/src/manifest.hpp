#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "squeeze/model.hpp"

namespace squeeze::cli {

// Accompanies every output file as <file>.manifest.json.
class RunManifest {
 public:
  RunManifest(std::string command, const SystemParams& params);

  // Duplicates are dropped so each warning is listed once.
  void warn(const std::string& message);
  const std::vector<std::string>& warnings() const { return warnings_; }

  void set_option(const std::string& key, const std::string& value);

  // Writes the manifest next to `output` and returns its path.
  std::filesystem::path write_for(const std::filesystem::path& output) const;

 private:
  std::string command_;
  SystemParams params_;
  std::vector<std::pair<std::string, std::string>> options_;
  std::vector<std::string> warnings_;
  std::chrono::steady_clock::time_point start_;
};

// Number formatted with 12 significant digits, as a JSON-ready double.
double rounded(double x);

}  // namespace squeeze::cli
