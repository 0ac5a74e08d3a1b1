#pragma once

namespace skewmix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace skewmix
