#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zoma/harness.hpp"

namespace zoma::cli {

/// Schema violation; carries every problem found, one per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses a config document. Every key is optional and defaults to the
/// ExperimentConfig defaults; unknown keys and wrong types are errors.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a JSON file. Malformed JSON is a ConfigError; an
/// unreadable file is an IoError.
ExperimentConfig load_config(const std::filesystem::path& path);

/// The defaults rendered as a config document.
nlohmann::json default_config_json();

}  // namespace zoma::cli
