#pragma once

#include <stdexcept>
#include <string>

namespace cltlab {

// Invalid or inconsistent user configuration; `path` names the offending field.
class config_error : public std::runtime_error {
 public:
  config_error(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Computation failed (degenerate row, incompatible lattice, cap exceeded, ...).
class engine_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class support_cap_error : public engine_error {
 public:
  explicit support_cap_error(const std::string& message) : engine_error(message) {}
};

}  // namespace cltlab
