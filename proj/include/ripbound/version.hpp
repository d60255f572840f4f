#pragma once

namespace ripbound {
inline constexpr const char* kVersion = "0.1.0";
}
