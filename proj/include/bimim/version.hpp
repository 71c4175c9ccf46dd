#pragma once

namespace bimim {

inline constexpr const char* kFormatVersion = "bimim-format 1";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace bimim
