#pragma once

namespace foxlie {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace foxlie
