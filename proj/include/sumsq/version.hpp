#pragma once

namespace sumsq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sumsq
