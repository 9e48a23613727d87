#pragma once

namespace paperrank {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "paperrank";

} // namespace paperrank
