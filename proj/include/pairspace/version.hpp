#pragma once

namespace pairspace {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pairspace
