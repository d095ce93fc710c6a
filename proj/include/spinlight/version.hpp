#pragma once

namespace spinlight {

inline constexpr const char* version_tag = "1.0.0";

}
