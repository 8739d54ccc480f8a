#ifndef SPIDERCAT_MONTE_CARLO_H
#define SPIDERCAT_MONTE_CARLO_H

#include <cstdint>

#include "spidercat/circuit.h"

namespace spidercat {

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// 95% Wilson score interval for k successes in m trials ([0, 1] when m = 0).
Interval wilson95(uint64_t k, uint64_t m);

struct MonteCarloOptions {
    int jobs = 1;
    uint64_t shard_shots = 1 << 16;
};

struct MonteCarloResult {
    uint64_t shots = 0;
    uint64_t accepted = 0;
    uint64_t failures = 0;  // accepted shots with output residual above t
    double acceptance_rate = 0;
    Interval acceptance_ci;
    double p_over_t = 0;
    Interval p_over_t_ci;
};

/// Samples the circuit under two-qubit depolarizing noise after every CNOT (each of
/// the 15 non-identity Paulis with probability p/15) and bit/phase flips with
/// probability 2p/3 after preparations and before measurements. Shots are split
/// into fixed shards seeded from (seed, shard index), so results do not depend on
/// `jobs`. Throws std::invalid_argument for shots == 0 or p outside [0, 1).
MonteCarloResult monte_carlo(const Circuit &c, int t, double p_phys, uint64_t shots, uint64_t seed,
                             const MonteCarloOptions &options = {});

}  // namespace spidercat

#endif
