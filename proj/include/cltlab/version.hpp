#pragma once

namespace cltlab {

inline constexpr const char* artifact_name = "clt-lab";
inline constexpr const char* artifact_version = "0.1.0";

}  // namespace cltlab
