#ifndef SPIDERCAT_BOUNDS_H
#define SPIDERCAT_BOUNDS_H

#include <cstdint>

#include "spidercat/ratio.h"

namespace spidercat {

/// Optimal vertex ratio r_t. Exact for 1 <= t <= 5; for larger t the glued-trees
/// conjecture 2 - 2(A+B)/(AB) with A = floor((t+3)/2), B = ceil((t+3)/2).
Ratio optimal_ratio(int t);
bool optimal_ratio_is_exact(int t);

struct LowerBounds {
    int64_t cnot_lb = 0;
    int64_t flag_lb = 0;
    Ratio vertex_ratio;
    bool exact = true;
};

/// cnot_lb = ceil(n (r_t + 1)) + 1 and flag_lb = ceil(r_t n / 2) + 1.
LowerBounds lower_bounds(int64_t n, int t);

}  // namespace spidercat

#endif
