#include "spidercat/cut_space.h"

#include <queue>
#include <stdexcept>

namespace spidercat {

CutSpace::CutSpace(size_t vertex_count, const std::vector<std::pair<uint32_t, uint32_t>> &edges)
    : vertex_count_(vertex_count), edges_(edges) {
    std::vector<std::vector<uint32_t>> inc(vertex_count);
    for (uint32_t e = 0; e < edges.size(); e++) {
        inc[edges[e].first].push_back(e);
        inc[edges[e].second].push_back(e);
    }
    parent_edge_.assign(vertex_count, -1);
    parent_.assign(vertex_count, 0);
    depth_.assign(vertex_count, -1);
    std::vector<char> tree_edge(edges.size(), 0);
    if (vertex_count > 0) {
        std::queue<uint32_t> queue;
        queue.push(0);
        depth_[0] = 0;
        while (!queue.empty()) {
            uint32_t v = queue.front();
            queue.pop();
            order_.push_back(v);
            for (uint32_t e : inc[v]) {
                uint32_t w = edges[e].first == v ? edges[e].second : edges[e].first;
                if (depth_[w] < 0) {
                    depth_[w] = depth_[v] + 1;
                    parent_[w] = v;
                    parent_edge_[w] = static_cast<int>(e);
                    tree_edge[e] = 1;
                    queue.push(w);
                }
            }
        }
    }
    if (order_.size() != vertex_count) {
        throw std::invalid_argument("CutSpace: graph is disconnected");
    }
    cycles_of_edge_.assign(edges.size(), {});
    for (uint32_t e = 0; e < edges.size(); e++) {
        if (tree_edge[e]) {
            continue;
        }
        uint32_t c = static_cast<uint32_t>(cycle_count_++);
        cycles_of_edge_[e].push_back(c);
        uint32_t a = edges[e].first, b = edges[e].second;
        while (a != b) {
            if (depth_[a] < depth_[b]) {
                std::swap(a, b);
            }
            cycles_of_edge_[parent_edge_[a]].push_back(c);
            a = parent_[a];
        }
    }
}

XorTable CutSpace::table(const std::vector<int> &side_bit, size_t side_bits, size_t extra_bits) const {
    XorTable t(edges_.size(), cycle_count_ + side_bits + extra_bits);
    for (uint32_t e = 0; e < edges_.size(); e++) {
        for (uint32_t c : cycles_of_edge_[e]) {
            t.flip(e, c);
        }
    }
    for (uint32_t v = 0; v < vertex_count_; v++) {
        if (v >= side_bit.size() || side_bit[v] < 0) {
            continue;
        }
        for (uint32_t w = v; parent_edge_[w] >= 0; w = parent_[w]) {
            t.set(static_cast<size_t>(parent_edge_[w]), cycle_count_ + static_cast<size_t>(side_bit[v]));
        }
    }
    return t;
}

std::vector<char> CutSpace::far_side(const std::vector<uint32_t> &cut_edges) const {
    std::vector<char> in_cut(edges_.size(), 0);
    for (uint32_t e : cut_edges) {
        in_cut[e] ^= 1;
    }
    std::vector<char> side(vertex_count_, 0);
    for (uint32_t v : order_) {
        if (parent_edge_[v] >= 0) {
            side[v] = side[parent_[v]] ^ in_cut[parent_edge_[v]];
        }
    }
    return side;
}

bool CutSpace::is_cut(const std::vector<uint32_t> &edge_ids) const {
    std::vector<char> parity(cycle_count_, 0);
    for (uint32_t e : edge_ids) {
        for (uint32_t c : cycles_of_edge_[e]) {
            parity[c] ^= 1;
        }
    }
    for (char p : parity) {
        if (p) {
            return false;
        }
    }
    return !edge_ids.empty();
}

}  // namespace spidercat
