#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "conewave/vec.hpp"
#include "doctest.h"

namespace conewave::testutil {

inline void check_close(const Vec& got, const Vec& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

/// Fresh empty directory under the system temp root; wiped if it already exists.
inline std::string clean_dir(const std::string& name) {
  namespace fs = std::filesystem;
  const fs::path p = fs::temp_directory_path() / "conewave_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

}  // namespace conewave::testutil
