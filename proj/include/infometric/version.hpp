#pragma once

namespace infometric {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace infometric
