#pragma once

namespace ringsqueeze {

inline constexpr const char* kVersion = "0.1.0";

}
