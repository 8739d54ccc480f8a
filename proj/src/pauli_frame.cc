#include "spidercat/pauli_frame.h"

#include <algorithm>

namespace spidercat {

FrameSimulator::FrameSimulator(const Circuit &c) : circuit_(c) {
    circuit_.validate();
    TableauRun run = run_tableau(circuit_);
    if (run.rejected) {
        throw UnsatisfiablePostselection(run.rejecting_op);
    }
    detector_index_.assign(circuit_.ops.size(), -1);
    flip_index_.assign(circuit_.ops.size(), -1);
    for (const MeasurementRecord &m : run.measurements) {
        if (m.deterministic) {
            detector_index_[m.op] = static_cast<int64_t>(detector_count_++);
        } else {
            SparseFlip s;
            for (uint32_t q = 0; q < circuit_.qubit_count; q++) {
                if (m.flip->get_x(q)) {
                    s.x.push_back(q);
                }
                if (m.flip->get_z(q)) {
                    s.z.push_back(q);
                }
            }
            flip_index_[m.op] = static_cast<int64_t>(flips_.size());
            flips_.push_back(std::move(s));
        }
    }
}

void FrameSimulator::step(size_t i, FrameLanes &f) const {
    const Op &op = circuit_.ops[i];
    switch (op.kind) {
        case OpKind::PrepZ:
        case OpKind::PrepX:
            f.x[op.a] = 0;
            f.z[op.a] = 0;
            return;
        case OpKind::Cnot:
            f.x[op.b] ^= f.x[op.a];
            f.z[op.a] ^= f.z[op.b];
            return;
        case OpKind::MeasZ:
        case OpKind::MeasX: {
            uint64_t flipped = op.kind == OpKind::MeasZ ? f.x[op.a] : f.z[op.a];
            if (detector_index_[i] >= 0) {
                f.detector_flips[detector_index_[i]] ^= flipped;
            } else if (flipped) {
                const SparseFlip &s = flips_[flip_index_[i]];
                for (uint32_t q : s.x) {
                    f.x[q] ^= flipped;
                }
                for (uint32_t q : s.z) {
                    f.z[q] ^= flipped;
                }
            }
            f.x[op.a] = 0;
            f.z[op.a] = 0;
            return;
        }
    }
}

int residual_weight(size_t x_weight, size_t n, bool z_parity_odd, bool with_z) {
    int w = static_cast<int>(std::min(x_weight, n - x_weight));
    if (with_z && z_parity_odd) {
        w = std::max(w, 1);
    }
    return w;
}

FaultPropagation propagate_faults(const FrameSimulator &sim, const std::vector<InjectedPauli> &faults,
                                  bool with_z) {
    auto none = [](size_t, FrameLanes &) {};
    auto inject = [&](size_t i, FrameLanes &f) {
        for (const InjectedPauli &p : faults) {
            if (p.after_op == i) {
                uint8_t k = static_cast<uint8_t>(p.pauli);
                f.x[p.qubit] ^= k & 1;
                f.z[p.qubit] ^= (k >> 1) & 1;
            }
        }
    };
    FrameLanes lanes = sim.run(none, inject);
    FaultPropagation out;
    out.detected = (lanes.rejected() & 1) != 0;
    size_t w = 0;
    for (uint32_t q : sim.circuit().outputs) {
        out.output_x.push_back(lanes.x[q] & 1);
        w += lanes.x[q] & 1;
        out.output_z_parity ^= (lanes.z[q] & 1) != 0;
    }
    out.residual_weight = residual_weight(w, sim.circuit().outputs.size(), out.output_z_parity, with_z);
    return out;
}

}  // namespace spidercat
