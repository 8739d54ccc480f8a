#ifndef SPIDERCAT_FAMILIES_H
#define SPIDERCAT_FAMILIES_H

#include <cstddef>

#include "spidercat/marked_graph.h"

namespace spidercat {

/// Rim cycle of length `vertex_count` plus the long diagonals. Two vertices give
/// the theta multigraph and four give K4.
MarkedGraph moebius_ladder(size_t vertex_count, int marks_per_edge = 0);
MarkedGraph prism_graph(size_t rungs);
MarkedGraph complete_k4();
MarkedGraph k33();
MarkedGraph generalized_petersen(size_t n, size_t k);
MarkedGraph petersen();
MarkedGraph heawood();

enum class HoneycombClass { Rung, Horizontal, Vertical };

/// k-by-k brick-wall tiling of the torus with 2k^2 vertices; each tile holds one
/// rung edge and contributes one horizontal and one vertical edge. The vertical
/// wrap is shifted by `twist` tiles. Every edge outside `unmarked` gets one mark.
MarkedGraph honeycomb_torus(size_t k, size_t twist, HoneycombClass unmarked = HoneycombClass::Rung);

/// Marked graphs achieving the optimal vertex ratio for t in {2,3,4,5}; each
/// member is certified t-robust before being returned. Throws std::invalid_argument
/// for t outside that range or k < 1, std::runtime_error if certification fails.
MarkedGraph optimal_family(int t, int k, int jobs = 1);

}  // namespace spidercat

#endif
