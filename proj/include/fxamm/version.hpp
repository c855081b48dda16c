#pragma once

namespace fxamm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fxamm
