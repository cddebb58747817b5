#pragma once

namespace flagekr {

inline constexpr const char * version = "0.1.0";

}
