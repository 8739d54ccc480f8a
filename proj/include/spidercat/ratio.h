#ifndef SPIDERCAT_RATIO_H
#define SPIDERCAT_RATIO_H

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace spidercat {

/// Non-negative rational number kept in lowest terms.
struct Ratio {
    int64_t num = 0;
    int64_t den = 1;

    Ratio() = default;
    Ratio(int64_t n, int64_t d = 1) : num(n), den(d) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    bool operator==(const Ratio &o) const {
        return num == o.num && den == o.den;
    }
    bool operator<(const Ratio &o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Ratio &o) const {
        return !(o < *this);
    }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
    /// Smallest integer >= num/den * k.
    int64_t ceil_times(int64_t k) const {
        __int128 p = static_cast<__int128>(num) * k;
        return static_cast<int64_t>(p >= 0 ? (p + den - 1) / den : p / den);
    }
};

inline std::ostream &operator<<(std::ostream &out, const Ratio &r) {
    return out << r.str();
}

}  // namespace spidercat

#endif
