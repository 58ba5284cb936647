#pragma once

namespace vibelab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vibelab
