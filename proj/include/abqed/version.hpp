#pragma once

namespace abqed {
inline constexpr const char* kVersion = "0.1.0";
}
