#ifndef SPIDERCAT_FAULT_CHECK_H
#define SPIDERCAT_FAULT_CHECK_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spidercat/circuit.h"
#include "spidercat/pauli_frame.h"
#include "spidercat/stabilizer.h"

namespace spidercat {

/// A circuit edge: the gap on `qubit` right after op `after_op`.
struct FaultSite {
    uint32_t qubit = 0;
    size_t after_op = 0;
    bool operator==(const FaultSite &) const = default;
};

/// One site per gap between consecutive events in each qubit lifetime (preparation,
/// gates, measurement); a lifetime with a single event gets the site after it.
/// Sorted by (after_op, qubit).
std::vector<FaultSite> fault_sites(const Circuit &c);

enum class FaultModel { XOnly, FullPauli };
enum class FtVerdict { Ft, Violated };

const char *to_string(FtVerdict v);
const char *to_string(FaultModel m);

struct FaultCheckOptions {
    FaultModel model = FaultModel::XOnly;
    int jobs = 1;
    uint64_t exhaustive_budget = 100000000;
    uint64_t samples = 1000000;
    uint64_t seed = 0;
};

struct FaultCounterexample {
    std::vector<FaultSite> sites;
    std::vector<PauliKind> paulis;
    int residual_output_weight = 0;
};

struct FaultReport {
    FtVerdict verdict = FtVerdict::Ft;
    int t = 0;
    size_t locations = 0;
    std::optional<FaultCounterexample> counterexample;
    uint64_t combos_checked = 0;
    bool exhaustive = true;
    std::vector<int> sampled_weights;

    bool ft() const {
        return verdict == FtVerdict::Ft;
    }
};

/// Enumerates fault combinations of weight 1..t (X faults, or X/Y/Z per site in the
/// full model) and reports the first one that escapes every detector while leaving
/// an output residual heavier than its weight. Weights whose combination count
/// exceeds the budget are sampled and listed in `sampled_weights`.
FaultReport check_ft(const Circuit &c, int t, const FaultCheckOptions &options = {});

/// Re-runs a counterexample through a fresh frame and confirms it is undetected with
/// the claimed residual weight.
bool revalidate_counterexample(const Circuit &c, const FaultCounterexample &ce, FaultModel model);

}  // namespace spidercat

#endif
