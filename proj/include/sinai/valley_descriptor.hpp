#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sinai::valley {

// The eight statistics of the potential valley around the origin at height L,
// plus Gamma(L, delta) membership once a delta has been supplied.
//
//   t_plus  = first z >= 0 with V(z) - min_{0<=y<=z} V(y) >= L   (mirrored on the left)
//   r1      = depth of the running minimum at that first-rise position
//   b       = bottom position attaining -r1 (innermost per the inf/sup tie rule)
//   r2      = highest potential value between the origin and the bottom
struct ValleyDescriptor {
    double L = 0.0;
    std::int64_t t_minus = 0;
    std::int64_t t_plus = 0;
    double r1_plus = 0.0;
    double r1_minus = 0.0;
    std::int64_t b_plus = 0;   // T_b^+
    std::int64_t b_minus = 0;  // T_b^-
    double r2_plus = 0.0;
    double r2_minus = 0.0;

    double delta = std::numeric_limits<double>::quiet_NaN();
    bool in_gamma = false;

    std::int64_t width() const { return t_plus - t_minus + 1; }
};

}  // namespace sinai::valley
