#pragma once

#include <string_view>

namespace dataware {

inline constexpr std::string_view k_tool_name = "dataware";
inline constexpr std::string_view k_version = "0.1.0";

}  // namespace dataware
