#include "spidercat/monte_carlo.h"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spidercat/pauli_frame.h"
#include "spidercat/rng.h"

namespace spidercat {

Interval wilson95(uint64_t k, uint64_t m) {
    if (m == 0) {
        return {0.0, 1.0};
    }
    const double z = 1.959963984540054;
    double n = static_cast<double>(m);
    double phat = static_cast<double>(k) / n;
    double denom = 1 + z * z / n;
    double centre = (phat + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

// Lanes hit by an event of probability p, drawn with geometric gaps.
class LaneSampler {
   public:
    explicit LaneSampler(double p) : p_(p), log_q_(p > 0 ? std::log1p(-p) : 0) {
    }
    uint64_t draw(Rng &rng) const {
        if (p_ <= 0) {
            return 0;
        }
        uint64_t mask = 0;
        uint64_t pos = gap(rng);
        while (pos < 64) {
            mask |= uint64_t{1} << pos;
            pos += 1 + gap(rng);
        }
        return mask;
    }

   private:
    uint64_t gap(Rng &rng) const {
        double u = 1.0 - rng.uniform();
        double g = std::floor(std::log(u) / log_q_);
        return g >= 64 ? 64 : static_cast<uint64_t>(g);
    }
    double p_;
    double log_q_;
};

struct ShardTally {
    uint64_t shots = 0;
    uint64_t accepted = 0;
    uint64_t failures = 0;
};

ShardTally run_shard(const FrameSimulator &sim, int t, double p, uint64_t shots, uint64_t seed) {
    const Circuit &c = sim.circuit();
    Rng rng(seed);
    LaneSampler two_qubit(p);
    LaneSampler spam(2 * p / 3);
    size_t n = c.outputs.size();
    ShardTally tally;
    for (uint64_t done = 0; done < shots; done += 64) {
        uint64_t valid = shots - done >= 64 ? ~uint64_t{0} : ((uint64_t{1} << (shots - done)) - 1);
        auto before = [&](size_t i, FrameLanes &f) {
            const Op &op = c.ops[i];
            if (op.kind == OpKind::MeasZ) {
                f.x[op.a] ^= spam.draw(rng);
            } else if (op.kind == OpKind::MeasX) {
                f.z[op.a] ^= spam.draw(rng);
            }
        };
        auto after = [&](size_t i, FrameLanes &f) {
            const Op &op = c.ops[i];
            if (op.kind == OpKind::PrepZ) {
                f.x[op.a] ^= spam.draw(rng);
            } else if (op.kind == OpKind::PrepX) {
                f.z[op.a] ^= spam.draw(rng);
            } else if (op.kind == OpKind::Cnot) {
                uint64_t hit = two_qubit.draw(rng);
                while (hit) {
                    int lane = __builtin_ctzll(hit);
                    hit &= hit - 1;
                    uint64_t pauli = 1 + rng.below(15);
                    uint64_t bit = uint64_t{1} << lane;
                    f.x[op.a] ^= (pauli & 1) ? bit : 0;
                    f.z[op.a] ^= (pauli & 2) ? bit : 0;
                    f.x[op.b] ^= (pauli & 4) ? bit : 0;
                    f.z[op.b] ^= (pauli & 8) ? bit : 0;
                }
            }
        };
        FrameLanes f = sim.run(before, after);
        uint64_t accepted = ~f.rejected() & valid;
        tally.shots += static_cast<uint64_t>(__builtin_popcountll(valid));
        tally.accepted += static_cast<uint64_t>(__builtin_popcountll(accepted));
        uint64_t lanes = accepted;
        while (lanes) {
            int lane = __builtin_ctzll(lanes);
            lanes &= lanes - 1;
            size_t w = 0;
            for (uint32_t q : c.outputs) {
                w += (f.x[q] >> lane) & 1;
            }
            if (residual_weight(w, n, false, false) > t) {
                tally.failures++;
            }
        }
    }
    return tally;
}

}  // namespace

MonteCarloResult monte_carlo(const Circuit &c, int t, double p_phys, uint64_t shots, uint64_t seed,
                             const MonteCarloOptions &options) {
    if (shots == 0) {
        throw std::invalid_argument("monte_carlo: shots must be positive");
    }
    if (!(p_phys >= 0 && p_phys < 1)) {
        throw std::invalid_argument("monte_carlo: p_phys must lie in [0, 1)");
    }
    FrameSimulator sim(c);
    uint64_t shard_shots = std::max<uint64_t>(64, options.shard_shots);
    uint64_t shard_count = (shots + shard_shots - 1) / shard_shots;
    std::vector<ShardTally> tallies(shard_count);
    std::atomic<uint64_t> next{0};
    auto worker = [&]() {
        while (true) {
            uint64_t s = next.fetch_add(1);
            if (s >= shard_count) {
                return;
            }
            uint64_t count = std::min(shard_shots, shots - s * shard_shots);
            tallies[s] = run_shard(sim, t, p_phys, count, Rng::derive(seed, s));
        }
    };
    int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; j++) {
            threads.emplace_back(worker);
        }
        for (auto &th : threads) {
            th.join();
        }
    }
    MonteCarloResult r;
    for (const ShardTally &s : tallies) {
        r.shots += s.shots;
        r.accepted += s.accepted;
        r.failures += s.failures;
    }
    r.acceptance_rate = static_cast<double>(r.accepted) / static_cast<double>(r.shots);
    r.acceptance_ci = wilson95(r.accepted, r.shots);
    r.p_over_t = r.accepted ? static_cast<double>(r.failures) / static_cast<double>(r.accepted) : 0.0;
    r.p_over_t_ci = wilson95(r.failures, r.accepted);
    return r;
}

}  // namespace spidercat
