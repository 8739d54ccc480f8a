#ifndef SPIDERCAT_SPIDER_TREE_H
#define SPIDERCAT_SPIDER_TREE_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spidercat/zgraph.h"

namespace spidercat {

/// Rooted spanning tree of a Z-graph; parent[root] = parent_edge[root] = -1.
struct SpiderTree {
    uint32_t root = 0;
    std::vector<int32_t> parent;
    std::vector<int32_t> parent_edge;

    /// Children sorted by id.
    std::vector<std::vector<uint32_t>> children() const;
    std::vector<int> depths() const;
    int diameter() const;
};

struct SpiderTreeError : std::runtime_error {
    SpiderTreeError(const std::string &what, std::vector<uint32_t> leaves)
        : std::runtime_error(what), offending(std::move(leaves)) {
    }
    std::vector<uint32_t> offending;
};

/// Empty string when the tree is a valid spider-ordering tree for z: spanning,
/// acyclic, built from z-edges, rooted at an internal spider (or at any spider when
/// z has none) and with only boundary spiders as leaves.
std::string spider_tree_problem(const ZGraph &z, const SpiderTree &tree);

/// Spanning forest on internal-internal z-edges, then greedy merges minimizing the
/// merged diameter, leaf repair, and rooting at the internal centre. Throws
/// SpiderTreeError when some internal spider cannot be kept off the leaves.
SpiderTree build_spider_tree(const ZGraph &z);

struct MergeStep {
    uint32_t edge;
    int predicted_diameter;
};

/// Intermediate state of build_spider_tree: the first-phase forest edges and the
/// merges in the order they were made (before leaf repair).
struct SpiderTreeTrace {
    std::vector<uint32_t> forest_edges;
    std::vector<MergeStep> merges;
    int repairs = 0;
};
SpiderTree build_spider_tree(const ZGraph &z, SpiderTreeTrace *trace);

/// Diameter of the forest induced by the given edge subset on the component holding
/// `member`.
int forest_component_diameter(const ZGraph &z, const std::vector<uint32_t> &edges, uint32_t member);

}  // namespace spidercat

#endif
