#pragma once

#include <string_view>

namespace kusuoka {

inline constexpr std::string_view kLibraryName = "kusuoka";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace kusuoka
