#include "wqed/manifest.hpp"

#include <fstream>
#include <stdexcept>

namespace wqed {

nlohmann::json RunManifest::to_json() const {
  return nlohmann::json{
      {"schema", schema},
      {"tool_version", tool_version},
      {"subcommand", subcommand},
      {"parameters", parameters},
      {"outputs", outputs},
      {"duration_seconds", duration_seconds},
      {"created_utc", created_utc},
  };
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.schema = j.at("schema").get<std::string>();
  if (m.schema != "wqed.manifest.v1")
    throw std::runtime_error("RunManifest: unsupported schema " + m.schema);
  m.tool_version = j.at("tool_version").get<std::string>();
  m.subcommand = j.at("subcommand").get<std::string>();
  m.parameters = j.at("parameters");
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.duration_seconds = j.value("duration_seconds", 0.0);
  m.created_utc = j.value("created_utc", std::string{});
  return m;
}

void RunManifest::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("RunManifest: cannot open " + path);
  out << to_json().dump(2) << "\n";
  if (!out) throw std::runtime_error("RunManifest: failed writing " + path);
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("RunManifest: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

}  // namespace wqed
