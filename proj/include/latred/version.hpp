#pragma once

namespace latred {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace latred
