#pragma once

namespace sqadd {

inline constexpr const char* kVersion = "0.3.0";

} // namespace sqadd
