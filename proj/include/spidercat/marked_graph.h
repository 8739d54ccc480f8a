#ifndef SPIDERCAT_MARKED_GRAPH_H
#define SPIDERCAT_MARKED_GRAPH_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spidercat/ratio.h"

namespace spidercat {

struct Edge {
    uint32_t u = 0;
    uint32_t v = 0;
    int marks = 0;

    bool operator==(const Edge &o) const = default;
    auto operator<=>(const Edge &o) const = default;
};

/// A 3-regular multigraph whose edges carry marks (output attachment points).
/// Edges are stored canonically: u <= v, sorted by (u, v, marks).
class MarkedGraph {
   public:
    MarkedGraph() = default;

    /// Throws std::invalid_argument unless every vertex has degree exactly 3 and
    /// mark counts are non-negative. Self-loops count twice toward the degree.
    MarkedGraph(size_t vertex_count, std::vector<Edge> edges);

    size_t vertex_count() const {
        return vertex_count_;
    }
    size_t edge_count() const {
        return edges_.size();
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const Edge &edge(size_t e) const {
        return edges_[e];
    }

    /// Edge ids incident to vertex v; a self-loop appears twice.
    const std::array<uint32_t, 3> &incident(uint32_t v) const {
        return incidence_[v];
    }
    uint32_t other_end(uint32_t e, uint32_t v) const {
        return edges_[e].u == v ? edges_[e].v : edges_[e].u;
    }

    int mark_count() const;
    int max_marks_per_edge() const;
    bool is_simple() const;
    bool is_connected() const;

    /// vertices / marks; zero marks yields 0/1.
    Ratio vertex_ratio() const;

    /// Same topology with the given per-edge mark counts (indexed like edges()).
    MarkedGraph with_marks(const std::vector<int> &marks) const;
    MarkedGraph unmarked() const;

    std::string to_text() const;
    static MarkedGraph from_text(std::string_view text);

    bool operator==(const MarkedGraph &o) const {
        return vertex_count_ == o.vertex_count_ && edges_ == o.edges_;
    }

   private:
    size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::array<uint32_t, 3>> incidence_;
};

std::ostream &operator<<(std::ostream &out, const MarkedGraph &g);

}  // namespace spidercat

#endif
