#pragma once

// Published multiplet for k = 0, s = 100, delta = 0, |g| = 1 at v = 0, 10,
// ..., 100: exact levels, then cmf levels for r1, -+r1, r2, r3, followed by
// the three measures in percent.

#include <array>

namespace reference {

inline constexpr std::array<double, 11> exact = {-1536.9, -1151.7, -798.1, -480.3, -205.5, 0.0,
                                                 205.5,   480.3,   798.1,  1151.7, 1536.9};

inline constexpr std::array<std::array<double, 11>, 4> cmf = {{
    {-1096.7, -919.6, -720.0, -499.3, -259.0, 0.0, 276.7, 570.2, 880.0, 1205.2, 1545.3},
    {-1545.3, -1205.2, -880.0, -570.2, -276.7, 0.0, 276.7, 570.2, 880.0, 1205.2, 1545.3},
    {-1482.4, -1175.2, -873.3, -576.7, -285.6, 0.0, 280.0, 554.3, 822.8, 1085.5, 1342.3},
    {-1421.2, -1137.0, -852.7, -568.5, -284.2, 0.0, 284.2, 568.5, 852.7, 1137.0, 1421.2},
}};

inline constexpr std::array<double, 4> delta2_H = {10.222, -12.220, 0.010, -1.000};
inline constexpr std::array<double, 4> delta2_E = {2.563, 0.670, 0.806, 0.657};
inline constexpr std::array<double, 4> delta2_E_up = {0.670, 0.670, 0.944, 0.657};

}  // namespace reference
