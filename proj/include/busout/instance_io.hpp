#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "busout/model.hpp"

namespace busout {

// Malformed instance text: bad JSON, unknown or missing fields, dangling ids.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses an instance document (see docs/instance-format.md).
Configuration parse_instance(std::string_view text);
Configuration load_instance(const std::filesystem::path& path);

// Canonical rendering. Only remaining buses and passengers are written, so a
// mid-play configuration renders as a fresh instance with cursor 0.
std::string render_instance(const Configuration& cfg);
void save_instance(const Configuration& cfg, const std::filesystem::path& path);

}  // namespace busout
