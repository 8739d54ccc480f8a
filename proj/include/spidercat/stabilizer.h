#ifndef SPIDERCAT_STABILIZER_H
#define SPIDERCAT_STABILIZER_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spidercat/circuit.h"

namespace spidercat {

/// Pauli operator with a sign, bit packed. Bit q of x/z is the X/Z component on qubit q.
struct PauliString {
    size_t qubits = 0;
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;
    bool negative = false;

    PauliString() = default;
    explicit PauliString(size_t n) : qubits(n), x((n + 63) / 64, 0), z((n + 63) / 64, 0) {
    }

    bool get_x(size_t q) const {
        return (x[q >> 6] >> (q & 63)) & 1;
    }
    bool get_z(size_t q) const {
        return (z[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);

    bool commutes(const PauliString &o) const;
    /// this <- other * this, tracking the sign. Requires the product to be Hermitian.
    void left_multiply(const PauliString &other);

    /// "+XXI"-style text, qubit 0 first.
    std::string str() const;
    static PauliString parse(const std::string &text);

    bool operator==(const PauliString &o) const {
        return qubits == o.qubits && x == o.x && z == o.z && negative == o.negative;
    }
};

/// Stabilizer group given by independent commuting generators.
struct StabilizerState {
    size_t qubits = 0;
    std::vector<PauliString> generators;

    /// Reduced row echelon form over columns X0..X{n-1}, Z0..Z{n-1}; unique per group.
    StabilizerState canonical() const;
    bool same_group(const StabilizerState &o) const;
};

/// The n-qubit CAT group <X...X, Z_i Z_{i+1}>.
StabilizerState cat_group(size_t n);

/// True iff the state is exactly the CAT group on n qubits.
bool is_cat(const StabilizerState &state, size_t n);

enum class PauliKind : uint8_t { X = 1, Z = 2, Y = 3 };

char pauli_char(PauliKind p);

/// A single-qubit Pauli applied right after op `after_op` on `qubit`.
struct InjectedPauli {
    size_t after_op = 0;
    uint32_t qubit = 0;
    PauliKind pauli = PauliKind::X;
};

/// What a measurement does in the noiseless postselected run.
struct MeasurementRecord {
    size_t op = 0;
    bool deterministic = false;
    /// For random outcomes: a stabilizer of the pre-measurement state that
    /// anticommutes with the measured observable (maps outcome 1 to outcome 0).
    std::optional<PauliString> flip;
};

struct TableauRun {
    bool rejected = false;         // some postselected outcome was deterministically 1
    size_t rejecting_op = 0;
    StabilizerState outputs;       // valid when !rejected && pure
    bool pure = false;             // the outputs carry a pure state of their own
    std::vector<MeasurementRecord> measurements;
};

/// Aaronson-Gottesman tableau with destabilizers over `qubit_count` qubits, all |0>.
class Tableau {
   public:
    explicit Tableau(size_t qubit_count);

    size_t qubits() const {
        return n_;
    }
    void h(uint32_t q);
    void cnot(uint32_t c, uint32_t t);
    void x_gate(uint32_t q);
    void z_gate(uint32_t q);
    void apply(uint32_t q, PauliKind p);

    /// Measures Z on q and forces outcome 0 when random. Returns the outcome and
    /// whether it was random; `flip` receives the anticommuting stabilizer.
    bool measure_z(uint32_t q, bool *random, PauliString *flip);
    bool measure_x(uint32_t q, bool *random, PauliString *flip);
    void reset_z(uint32_t q);

    PauliString stabilizer(size_t i) const;
    /// Subgroup of the stabilizer group supported on `qubits`, re-indexed in that order.
    StabilizerState restrict_to(const std::vector<uint32_t> &qubits, bool *pure) const;

   private:
    void rowsum(size_t h, size_t i);
    bool bit_x(size_t row, size_t q) const {
        return (xs_[row * words_ + (q >> 6)] >> (q & 63)) & 1;
    }
    bool bit_z(size_t row, size_t q) const {
        return (zs_[row * words_ + (q >> 6)] >> (q & 63)) & 1;
    }
    PauliString row(size_t r) const;
    void set_row(size_t r, const PauliString &p);

    size_t n_;
    size_t words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> signs_;
};

/// Runs the circuit on a tableau, postselecting every measurement on 0, with the
/// given Paulis injected. Never throws on rejection.
TableauRun run_tableau(const Circuit &c, const std::vector<InjectedPauli> &faults = {});

struct SimulationResult {
    StabilizerState state;
    bool deterministic = false;  // the outputs end in a pure state
};

struct UnsatisfiablePostselection : std::runtime_error {
    explicit UnsatisfiablePostselection(size_t op)
        : std::runtime_error("unsatisfiable postselection at op " + std::to_string(op)), op(op) {
    }
    size_t op;
};

/// Noiseless postselected run. Throws UnsatisfiablePostselection when a measurement
/// deterministically yields 1.
SimulationResult simulate(const Circuit &c);

}  // namespace spidercat

#endif
