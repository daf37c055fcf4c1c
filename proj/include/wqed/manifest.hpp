#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace wqed {

// Every CLI run writes one of these next to its outputs. The parameters
// object holds the fully resolved configuration (defaults, config file and
// flag overrides already merged), so `rerun` can reproduce the outputs
// byte for byte.
struct RunManifest {
  std::string schema = "wqed.manifest.v1";
  std::string tool_version;
  std::string subcommand;
  nlohmann::json parameters;  // resolved, subcommand-specific
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
  std::string created_utc;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

}  // namespace wqed
