#ifndef SPIDERCAT_MARKING_H
#define SPIDERCAT_MARKING_H

#include <cstdint>
#include <vector>

#include "spidercat/cnf.h"
#include "spidercat/marked_graph.h"
#include "spidercat/sat_solver.h"

namespace spidercat {

struct MarkingEncoding {
    WcnfFormula wcnf;
    /// First-mark variable per edge.
    std::vector<int> x;
    /// Second-mark variable per edge (t = 2 only, otherwise empty).
    std::vector<int> y;
};

/// Soft unit clauses reward every mark; hard clauses forbid local patterns that
/// would expose too many marks to a weight-t fault.
MarkingEncoding marking_encoding(const MarkedGraph &g, int t);
WcnfFormula marking_constraints(const MarkedGraph &g, int t);

/// Connected vertex subsets of size 1..max_size, each once, ordered by size then
/// lexicographically by sorted vertex list.
std::vector<std::vector<uint32_t>> enumerate_subtrees(const MarkedGraph &g, size_t max_size);

struct MarkingOptions {
    /// Marks the caller needs; the result is infeasible when the optimum is lower.
    int min_marks = 0;
    int jobs = 1;
    int max_rounds = 100000;
};

struct MarkingResult {
    bool feasible = false;
    /// Best certified marking (may be below min_marks when infeasible).
    MarkedGraph graph;
    int marks = -1;
    int sat_calls = 0;
    int blocking_clauses = 0;
};

/// Maximizes the number of marks by descending-bound SAT calls; every candidate is
/// certified with is_t_robust and violating cuts are excluded by blocking clauses
/// before the search continues.
MarkingResult solve_marking(const MarkedGraph &g, int t, const SolverBackend &backend = SolverBackend::internal(),
                            const MarkingOptions &options = {});

}  // namespace spidercat

#endif
