#ifndef SPIDERCAT_ROBUSTNESS_H
#define SPIDERCAT_ROBUSTNESS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spidercat/marked_graph.h"
#include "spidercat/zgraph.h"

namespace spidercat {

/// An edge cut together with the bipartition it induces. side_a always holds
/// vertex 0. For Z-graph cuts ids refer to z-edges and spiders; for nonlocal cuts
/// of a plain graph they refer to graph edges and vertices.
struct Cut {
    std::vector<uint32_t> cut_edges;
    std::vector<uint32_t> side_a;
    std::vector<uint32_t> side_b;
    int marks_a = 0;
    int marks_b = 0;

    int weight() const {
        return static_cast<int>(cut_edges.size());
    }
};

enum class RobustCondition {
    /// A weight-f cut must leave at most f marks on one side.
    PerWeight,
    /// Every cut of weight at most t must leave at most t marks on one side.
    Literal,
};

struct RobustnessOptions {
    RobustCondition condition = RobustCondition::PerWeight;
    int jobs = 1;
};

enum class RobustVerdict { Robust, Violated };

struct RobustnessReport {
    RobustVerdict verdict = RobustVerdict::Robust;
    int t = 0;
    int fault_weights_checked = 0;
    std::optional<Cut> counterexample;
    uint64_t cuts_enumerated = 0;

    bool robust() const {
        return verdict == RobustVerdict::Robust;
    }
};

/// Enumerates every set of at most t z-edges in colexicographic order (by weight,
/// then sorted id tuple) and reports the first bad cut.
RobustnessReport is_t_robust(const ZGraph &z, int t, const RobustnessOptions &options = {});
RobustnessReport is_t_robust(const MarkedGraph &g, int t, const RobustnessOptions &options = {});

/// Independent check that `cut` is a genuine edge cut of `z` with the recorded
/// sides and mark counts, and that its smaller side holds more than `bound` marks.
bool revalidate_violation(const ZGraph &z, const Cut &cut, int bound);

std::string to_string(RobustVerdict v);

}  // namespace spidercat

#endif
