#pragma once

namespace pmelab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pmelab
