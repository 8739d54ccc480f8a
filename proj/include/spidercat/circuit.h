#ifndef SPIDERCAT_CIRCUIT_H
#define SPIDERCAT_CIRCUIT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spidercat {

enum class OpKind : uint8_t { PrepZ, PrepX, Cnot, MeasZ, MeasX };

struct Op {
    OpKind kind = OpKind::PrepZ;
    uint32_t a = 0;  // target of preparations and measurements, control of CNOT
    uint32_t b = 0;  // CNOT target

    bool operator==(const Op &o) const {
        return kind == o.kind && a == o.a && (kind != OpKind::Cnot || b == o.b);
    }
};

/// Preparations, CNOTs and measurements postselected on outcome 0.
struct Circuit {
    uint32_t qubit_count = 0;
    std::vector<Op> ops;
    std::vector<uint32_t> outputs;

    void prep_z(uint32_t q) {
        ops.push_back({OpKind::PrepZ, q, 0});
    }
    void prep_x(uint32_t q) {
        ops.push_back({OpKind::PrepX, q, 0});
    }
    void cnot(uint32_t c, uint32_t t) {
        ops.push_back({OpKind::Cnot, c, t});
    }
    void meas_z(uint32_t q) {
        ops.push_back({OpKind::MeasZ, q, 0});
    }
    void meas_x(uint32_t q) {
        ops.push_back({OpKind::MeasX, q, 0});
    }

    /// Throws std::invalid_argument when a qubit is used before preparation or after
    /// measurement, prepared while live, or when outputs are not live at the end.
    void validate() const;

    std::string to_text() const;
    static Circuit from_text(std::string_view text);

    /// FNV-1a over the canonical text form.
    uint64_t hash() const;
    std::string hash_hex() const;

    bool operator==(const Circuit &o) const {
        return qubit_count == o.qubit_count && ops == o.ops && outputs == o.outputs;
    }
};

struct ResourceCounts {
    int cnots = 0;
    int cnot_depth = 0;
    int ancillas = 0;
    int flags = 0;
};

ResourceCounts resource_counts(const Circuit &c);

}  // namespace spidercat

#endif
