#pragma once

// Locale-independent numeric formatting for reproducible CSV and manifest
// output: 17 significant digits round-trip a double exactly.

#include <cstdio>
#include <string>

namespace spinlight {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}
