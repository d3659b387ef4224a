#pragma once

namespace steerkit {

inline constexpr const char* kToolName = "steerkit";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace steerkit
