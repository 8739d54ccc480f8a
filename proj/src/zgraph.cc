#include "spidercat/zgraph.h"

#include <stdexcept>
#include <string>

namespace spidercat {

size_t ZGraph::internal_count() const {
    size_t k = 0;
    for (SpiderKind kind : kinds) {
        k += kind == SpiderKind::Internal;
    }
    return k;
}

std::vector<std::vector<uint32_t>> ZGraph::incidence() const {
    std::vector<std::vector<uint32_t>> inc(kinds.size());
    for (uint32_t e = 0; e < edges.size(); e++) {
        inc[edges[e].first].push_back(e);
        inc[edges[e].second].push_back(e);
    }
    return inc;
}

bool ZGraph::is_connected() const {
    if (kinds.empty()) {
        return true;
    }
    auto inc = incidence();
    std::vector<char> seen(kinds.size(), 0);
    std::vector<uint32_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        uint32_t s = stack.back();
        stack.pop_back();
        for (uint32_t e : inc[s]) {
            uint32_t w = other_end(e, s);
            if (!seen[w]) {
                seen[w] = 1;
                reached++;
                stack.push_back(w);
            }
        }
    }
    return reached == kinds.size();
}

void ZGraph::validate() const {
    auto inc = incidence();
    std::vector<int> output_uses(kinds.size(), 0);
    for (uint32_t o : outputs) {
        if (o >= kinds.size() || !is_boundary(o)) {
            throw std::invalid_argument("ZGraph: output " + std::to_string(o) + " is not a boundary spider");
        }
        output_uses[o]++;
    }
    for (uint32_t s = 0; s < kinds.size(); s++) {
        size_t d = inc[s].size();
        if (is_boundary(s)) {
            if (output_uses[s] != 1) {
                throw std::invalid_argument("ZGraph: boundary spider " + std::to_string(s) +
                                            " must carry exactly one output");
            }
            if (d < 1 || d > 2) {
                throw std::invalid_argument("ZGraph: boundary spider " + std::to_string(s) + " has degree " +
                                            std::to_string(d));
            }
        } else if (d != 3) {
            throw std::invalid_argument("ZGraph: internal spider " + std::to_string(s) + " has degree " +
                                        std::to_string(d));
        }
    }
    if (!is_connected()) {
        throw std::invalid_argument("ZGraph: diagram is disconnected");
    }
}

ZGraph to_zgraph(const MarkedGraph &g, std::vector<uint32_t> *z_edge_source) {
    ZGraph z;
    z.kinds.assign(g.vertex_count(), SpiderKind::Internal);
    if (z_edge_source) {
        z_edge_source->clear();
    }
    for (uint32_t i = 0; i < g.edge_count(); i++) {
        const Edge &e = g.edge(i);
        uint32_t prev = e.u;
        for (int m = 0; m < e.marks; m++) {
            uint32_t b = static_cast<uint32_t>(z.kinds.size());
            z.kinds.push_back(SpiderKind::Boundary);
            z.outputs.push_back(b);
            z.edges.emplace_back(prev, b);
            if (z_edge_source) {
                z_edge_source->push_back(i);
            }
            prev = b;
        }
        z.edges.emplace_back(prev, e.v);
        if (z_edge_source) {
            z_edge_source->push_back(i);
        }
    }
    return z;
}

ZGraph cycle_zgraph(size_t n) {
    if (n < 2) {
        throw std::invalid_argument("cycle_zgraph: need at least two outputs");
    }
    ZGraph z;
    z.kinds.assign(n, SpiderKind::Boundary);
    for (uint32_t i = 0; i < n; i++) {
        z.outputs.push_back(i);
        z.edges.emplace_back(std::min<uint32_t>(i, (i + 1) % n), std::max<uint32_t>(i, (i + 1) % n));
    }
    if (n == 2) {
        z.edges.pop_back();
    }
    return z;
}

ZGraph star_zgraph() {
    ZGraph z;
    z.kinds = {SpiderKind::Internal, SpiderKind::Boundary, SpiderKind::Boundary, SpiderKind::Boundary};
    z.outputs = {1, 2, 3};
    z.edges = {{0, 1}, {0, 2}, {0, 3}};
    return z;
}

}  // namespace spidercat
