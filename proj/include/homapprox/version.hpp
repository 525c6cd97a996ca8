#pragma once

namespace homapprox {

inline constexpr const char* kEngineVersion = "homapprox 0.1.0";

}
