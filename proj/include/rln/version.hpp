#pragma once

namespace rln {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rln
