#ifndef SPIDERCAT_PAULI_FRAME_H
#define SPIDERCAT_PAULI_FRAME_H

#include <cstdint>
#include <vector>

#include "spidercat/circuit.h"
#include "spidercat/stabilizer.h"

namespace spidercat {

/// 64 Pauli frames propagated side by side; bit j of every word belongs to lane j.
struct FrameLanes {
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;
    std::vector<uint64_t> detector_flips;  // one word per deterministic measurement

    uint64_t rejected() const {
        uint64_t any = 0;
        for (uint64_t d : detector_flips) {
            any |= d;
        }
        return any;
    }
};

/// Propagates Pauli frames through a postselected circuit. The noiseless run is
/// simulated once; afterwards every measurement is either a detector (deterministic
/// outcome, a flip rejects the shot) or random, in which case an anticommuting
/// frame is multiplied by the recorded stabilizer that maps outcome 1 back to 0.
class FrameSimulator {
   public:
    /// Throws UnsatisfiablePostselection when the noiseless run is rejected.
    explicit FrameSimulator(const Circuit &c);

    const Circuit &circuit() const {
        return circuit_;
    }
    size_t detector_count() const {
        return detector_count_;
    }
    /// Detector index of op i, or -1 when op i is not a deterministic measurement.
    int64_t detector_of(size_t op) const {
        return detector_index_[op];
    }

    /// `before(i, lanes)` runs before op i and `after(i, lanes)` right after it; both
    /// may XOR faults into lanes.x / lanes.z.
    template <typename Before, typename After>
    FrameLanes run(Before &&before, After &&after) const {
        FrameLanes f;
        f.x.assign(circuit_.qubit_count, 0);
        f.z.assign(circuit_.qubit_count, 0);
        f.detector_flips.assign(detector_count_, 0);
        for (size_t i = 0; i < circuit_.ops.size(); i++) {
            before(i, f);
            step(i, f);
            after(i, f);
        }
        return f;
    }

    /// Applies op i to the lanes.
    void step(size_t i, FrameLanes &f) const;

   private:
    struct SparseFlip {
        std::vector<uint32_t> x;
        std::vector<uint32_t> z;
    };

    Circuit circuit_;
    size_t detector_count_ = 0;
    std::vector<int64_t> detector_index_;
    std::vector<int64_t> flip_index_;
    std::vector<SparseFlip> flips_;
};

/// Output-residual weight modulo the CAT group: min(w, n - w) for X support w,
/// raised to 1 when the Z parity is odd and `with_z` is set.
int residual_weight(size_t x_weight, size_t n, bool z_parity_odd, bool with_z);

struct FaultPropagation {
    bool detected = false;
    std::vector<uint8_t> output_x;
    bool output_z_parity = false;
    int residual_weight = 0;
};

/// Pushes a set of faults through the circuit in one frame and reports detection and
/// the residual output error. The residual ignores the Z part unless `with_z`.
FaultPropagation propagate_faults(const FrameSimulator &sim, const std::vector<InjectedPauli> &faults,
                                  bool with_z = false);

}  // namespace spidercat

#endif
