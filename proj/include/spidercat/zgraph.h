#ifndef SPIDERCAT_ZGRAPH_H
#define SPIDERCAT_ZGRAPH_H

#include <cstdint>
#include <utility>
#include <vector>

#include "spidercat/marked_graph.h"

namespace spidercat {

enum class SpiderKind : uint8_t { Internal, Boundary };

/// Phase-free diagram of Z-spiders. Internal spiders have three z-edges; boundary
/// spiders carry one output leg plus one or two z-edges.
struct ZGraph {
    std::vector<SpiderKind> kinds;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::vector<uint32_t> outputs;

    size_t spider_count() const {
        return kinds.size();
    }
    size_t internal_count() const;
    bool is_boundary(uint32_t s) const {
        return kinds[s] == SpiderKind::Boundary;
    }

    /// Incident z-edge ids per spider (self-loops listed twice).
    std::vector<std::vector<uint32_t>> incidence() const;
    uint32_t other_end(uint32_t e, uint32_t s) const {
        return edges[e].first == s ? edges[e].second : edges[e].first;
    }

    /// Legs of a spider including its output leg.
    int arity(uint32_t s, const std::vector<std::vector<uint32_t>> &inc) const {
        return static_cast<int>(inc[s].size()) + (is_boundary(s) ? 1 : 0);
    }

    bool is_connected() const;

    /// Throws std::invalid_argument when degree, output or connectivity rules fail.
    void validate() const;
};

/// One internal spider per vertex (same ids), one boundary spider per mark. An edge
/// (u,v) with m marks becomes the path u - b1 - ... - bm - v. Boundary spiders are
/// numbered after the internal ones in canonical edge order then mark index, and
/// that is also the output order. `z_edge_source`, when given, receives the graph
/// edge each z-edge subdivides.
ZGraph to_zgraph(const MarkedGraph &g, std::vector<uint32_t> *z_edge_source = nullptr);

/// Ring of n boundary spiders: the 1-robust diagram with no internal spider.
ZGraph cycle_zgraph(size_t n);

/// One internal spider joined to three boundary leaves: the bare 3-qubit CAT.
ZGraph star_zgraph();

}  // namespace spidercat

#endif
