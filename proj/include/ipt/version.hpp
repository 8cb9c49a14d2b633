#pragma once

namespace ipt {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ipt
