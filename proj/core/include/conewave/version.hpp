#pragma once

namespace conewave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace conewave
