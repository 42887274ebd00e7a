#pragma once

#define PSKDIFF_VERSION "1.0.0"

namespace pskdiff {

inline constexpr const char* tool_name = "pskdiff";
inline constexpr const char* tool_version = PSKDIFF_VERSION;
inline constexpr int schema_version = 1;

}  // namespace pskdiff
