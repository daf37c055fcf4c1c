#pragma once

namespace wqed {

inline constexpr const char* kToolVersion = "1.0.0";

}
