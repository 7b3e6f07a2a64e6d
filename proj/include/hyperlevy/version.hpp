#pragma once

namespace hyperlevy {

inline constexpr const char* kVersion = "1.0.0";
// Bumped whenever a CSV or JSON layout changes.
inline constexpr int kFormatVersion = 1;

}  // namespace hyperlevy
