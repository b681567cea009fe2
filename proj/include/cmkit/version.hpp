#pragma once

namespace cmkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cmkit
