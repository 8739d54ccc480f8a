#ifndef SPIDERCAT_CONSTRUCTIONS_H
#define SPIDERCAT_CONSTRUCTIONS_H

#include <cstdint>
#include <vector>

#include "spidercat/circuit.h"
#include "spidercat/marked_graph.h"
#include "spidercat/zgraph.h"

namespace spidercat {

/// Recursive doubling construction. The n outputs start as |+> and are merged
/// pairwise along a balanced split tree; merging blocks A and B uses
/// min(t+1, |A|, |B|) ZZ measurements, each an ancilla with two CNOTs. Within a
/// block the ZZ legs go to the qubits used least so far (lowest index on ties), so
/// later layers land on qubits left free by earlier ones. Layers are emitted bottom
/// up; ancillas are recycled after each layer, or after the following layer when
/// `compressed` is set. Throws std::invalid_argument when n < t + 1 or t < 1.
Circuit recursive_cat(uint32_t n, int t, bool compressed = false);

/// Number of ZZ measurements recursive_cat(n, t) performs, counted on the split tree.
uint64_t recursive_zz_count(uint32_t n, int t);

/// Greedy maximal matching over z-edges in id order (self-loops skipped).
std::vector<uint32_t> greedy_spider_matching(const ZGraph &z);

/// Depth-3 construction: one CAT state per spider, legs of z-edges glued by a CNOT
/// followed by X and Z measurements. For each matched pair of spiders the gluing is
/// replaced by a CNOT between the two root qubits before either fans out.
Circuit shallow_cat(const ZGraph &z);
Circuit shallow_cat(const MarkedGraph &g);

/// |+> followed by the CNOT chain 0->1->...->n-1: the unflagged baseline.
Circuit fanout_ladder(uint32_t n);

}  // namespace spidercat

#endif
