#pragma once

namespace igmd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace igmd
