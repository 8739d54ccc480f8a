#ifndef SPIDERCAT_RNG_H
#define SPIDERCAT_RNG_H

#include <cstdint>
#include <utility>
#include <vector>

namespace spidercat {

/// SplitMix64 generator.
class Rng {
   public:
    explicit Rng(uint64_t seed = 0) : state_(seed) {
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent child stream; advances this generator by one step.
    Rng split() {
        return Rng(next() ^ 0x6A09E667F3BCC909ULL);
    }

    /// Derives the seed of stream `index` without touching any generator state.
    static uint64_t derive(uint64_t seed, uint64_t index) {
        Rng r(seed ^ (index * 0xD1B54A32D192ED03ULL));
        r.next();
        return r.next();
    }

    /// Uniform integer in [0, bound). bound must be positive.
    uint64_t below(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return (next() >> 11) * 0x1.0p-53;
    }

    bool coin() {
        return (next() >> 63) != 0;
    }

    template <typename T>
    void shuffle(std::vector<T> &items) {
        for (size_t i = items.size(); i > 1; i--) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

   private:
    uint64_t state_;
};

}  // namespace spidercat

#endif
