#ifndef SPIDERCAT_NONLOCAL_CUT_H
#define SPIDERCAT_NONLOCAL_CUT_H

#include <optional>
#include <vector>

#include "spidercat/cnf.h"
#include "spidercat/marked_graph.h"
#include "spidercat/robustness.h"
#include "spidercat/sat_solver.h"

namespace spidercat {

/// True when both sides of the cut contain a cycle of g.
bool is_nonlocal(const MarkedGraph &g, const Cut &cut);

/// First cut (colexicographic over edge ids, by weight) of at most t edges whose
/// sides both contain a cycle.
std::optional<Cut> has_nonlocal_cut_bruteforce(const MarkedGraph &g, int t, int jobs = 1);

struct NonlocalCutEncoding {
    CnfFormula cnf;
    std::vector<int> x;  // side A membership per vertex
    std::vector<int> a;  // witness inside A per vertex
    std::vector<int> b;  // witness inside B per vertex
    std::vector<int> d;  // cut indicator per edge
};

/// Partition, witness and cut-edge variables with a sequential counter bounding the
/// cut size; satisfiable exactly when g has a nonlocal cut of at most t edges.
NonlocalCutEncoding nonlocal_cut_encoding(const MarkedGraph &g, int t);
CnfFormula nonlocal_cut_cnf(const MarkedGraph &g, int t);

Cut decode_nonlocal_cut(const MarkedGraph &g, const NonlocalCutEncoding &enc, const std::vector<bool> &model);

/// Solves the encoding. Throws SolverError when the backend times out or fails.
std::optional<Cut> find_nonlocal_cut(const MarkedGraph &g, int t,
                                     const SolverBackend &backend = SolverBackend::internal());

}  // namespace spidercat

#endif
