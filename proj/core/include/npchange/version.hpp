#pragma once

namespace npchange {

inline constexpr const char* version = "0.1.0";

} // namespace npchange
