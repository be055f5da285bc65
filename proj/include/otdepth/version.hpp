#pragma once

namespace otdepth {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace otdepth
