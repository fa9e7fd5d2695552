#pragma once

namespace rwre {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rwre
