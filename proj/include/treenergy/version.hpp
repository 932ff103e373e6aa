#pragma once

namespace treenergy {

// Bump whenever a numerical engine changes; cached energies from other
// versions are ignored.
inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace treenergy
