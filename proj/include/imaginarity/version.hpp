#pragma once

namespace imaginarity {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace imaginarity
