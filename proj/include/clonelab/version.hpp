#pragma once

namespace clonelab
{

inline constexpr const char* version = "0.1.0";

} // namespace clonelab
