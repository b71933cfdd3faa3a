#pragma once

namespace itermaps {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace itermaps
