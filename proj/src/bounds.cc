#include "spidercat/bounds.h"

#include <stdexcept>

namespace spidercat {

Ratio optimal_ratio(int t) {
    if (t < 1) {
        throw std::invalid_argument("optimal_ratio: t must be positive");
    }
    int64_t a = (t + 3) / 2;
    int64_t b = (t + 4) / 2;
    return Ratio(2 * (a * b - a - b), a * b);
}

bool optimal_ratio_is_exact(int t) {
    return t >= 1 && t <= 5;
}

LowerBounds lower_bounds(int64_t n, int t) {
    LowerBounds lb;
    lb.vertex_ratio = optimal_ratio(t);
    lb.exact = optimal_ratio_is_exact(t);
    Ratio r1(lb.vertex_ratio.num + lb.vertex_ratio.den, lb.vertex_ratio.den);
    lb.cnot_lb = r1.ceil_times(n) + 1;
    lb.flag_lb = Ratio(lb.vertex_ratio.num, 2 * lb.vertex_ratio.den).ceil_times(n) + 1;
    return lb;
}

}  // namespace spidercat
