#pragma once

#include <stdexcept>
#include <string>

namespace conewave {

/// Imported data violates a format or norm contract (CLI exit 4).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be opened, read, or written (CLI exit 3).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conewave
