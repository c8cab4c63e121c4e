#pragma once

#include "seltop/model.hpp"

// Shared fixture models used across the suites.
namespace fixtures {

inline const char* kM1 = R"(space m1
segment 0 1 open-left open-right
point 2
)";

inline const char* kM2 = R"(space m2
segment 0 1
segment 2 3
)";

inline const char* kM3 = R"(space m3
point 0
point 1
segment 2 3 open-left open-right
)";

inline const char* kM4 = R"(space m4
family limit=0 side=right ratio=1/2 seg=5/8..3/4
point 0
)";

// two accumulation points, members shrinking toward each from inside
inline const char* kM5 = R"(space m5
family limit=0 side=right ratio=1/2 seg=5/8..3/4
family limit=2 side=left ratio=1/2 seg=5/8..3/4
)";

inline seltop::SymbolicSpace m1() { return seltop::parse_model(kM1); }
inline seltop::SymbolicSpace m2() { return seltop::parse_model(kM2); }
inline seltop::SymbolicSpace m3() { return seltop::parse_model(kM3); }
inline seltop::SymbolicSpace m4() { return seltop::parse_model(kM4); }
inline seltop::SymbolicSpace m5() { return seltop::parse_model(kM5); }

} // namespace fixtures
