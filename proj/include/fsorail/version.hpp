#pragma once

namespace fsorail {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fsorail
