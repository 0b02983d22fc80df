#pragma once

namespace minimax {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace minimax
