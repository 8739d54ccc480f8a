#include "spidercat/spider_tree.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <tuple>

namespace spidercat {

namespace {

using Adjacency = std::vector<std::vector<std::pair<uint32_t, uint32_t>>>;  // (neighbour, edge)

Adjacency forest_adjacency(const ZGraph &z, const std::vector<uint32_t> &edges) {
    Adjacency adj(z.spider_count());
    for (uint32_t e : edges) {
        auto [a, b] = z.edges[e];
        adj[a].emplace_back(b, e);
        adj[b].emplace_back(a, e);
    }
    return adj;
}

// Distances from `source` inside its forest component (-1 elsewhere).
std::vector<int> forest_distances(const Adjacency &adj, uint32_t source) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<uint32_t> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop();
        for (auto [w, e] : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

struct Components {
    std::vector<int> id;
    std::vector<int> ecc;
    std::vector<int> diam;
};

Components analyse(const Adjacency &adj) {
    size_t n = adj.size();
    Components c;
    c.id.assign(n, -1);
    c.ecc.assign(n, 0);
    int next = 0;
    for (uint32_t v = 0; v < n; v++) {
        if (c.id[v] >= 0) {
            continue;
        }
        std::vector<int> dist = forest_distances(adj, v);
        int diam = 0;
        std::vector<uint32_t> members;
        for (uint32_t w = 0; w < n; w++) {
            if (dist[w] >= 0) {
                c.id[w] = next;
                members.push_back(w);
            }
        }
        for (uint32_t w : members) {
            std::vector<int> d = forest_distances(adj, w);
            int e = 0;
            for (uint32_t x : members) {
                e = std::max(e, d[x]);
            }
            c.ecc[w] = e;
            diam = std::max(diam, e);
        }
        c.diam.push_back(diam);
        next++;
    }
    return c;
}

}  // namespace

std::vector<std::vector<uint32_t>> SpiderTree::children() const {
    std::vector<std::vector<uint32_t>> out(parent.size());
    for (uint32_t s = 0; s < parent.size(); s++) {
        if (parent[s] >= 0) {
            out[parent[s]].push_back(s);
        }
    }
    return out;
}

std::vector<int> SpiderTree::depths() const {
    std::vector<int> depth(parent.size(), -1);
    for (uint32_t s = 0; s < parent.size(); s++) {
        int d = 0;
        int32_t cur = static_cast<int32_t>(s);
        while (cur >= 0 && parent[cur] >= 0 && d <= static_cast<int>(parent.size())) {
            cur = parent[cur];
            d++;
        }
        depth[s] = d;
    }
    return depth;
}

int SpiderTree::diameter() const {
    Adjacency adj(parent.size());
    for (uint32_t s = 0; s < parent.size(); s++) {
        if (parent[s] >= 0) {
            adj[s].emplace_back(parent[s], parent_edge[s]);
            adj[parent[s]].emplace_back(s, parent_edge[s]);
        }
    }
    int best = 0;
    for (uint32_t s = 0; s < parent.size(); s++) {
        for (int d : forest_distances(adj, s)) {
            best = std::max(best, d);
        }
    }
    return best;
}

int forest_component_diameter(const ZGraph &z, const std::vector<uint32_t> &edges, uint32_t member) {
    Adjacency adj = forest_adjacency(z, edges);
    std::vector<int> from_member = forest_distances(adj, member);
    int best = 0;
    for (uint32_t s = 0; s < adj.size(); s++) {
        if (from_member[s] < 0) {
            continue;
        }
        for (int d : forest_distances(adj, s)) {
            best = std::max(best, d);
        }
    }
    return best;
}

std::string spider_tree_problem(const ZGraph &z, const SpiderTree &tree) {
    size_t n = z.spider_count();
    if (tree.parent.size() != n || tree.parent_edge.size() != n) {
        return "tree size does not match the diagram";
    }
    if (tree.root >= n || tree.parent[tree.root] != -1) {
        return "root is invalid";
    }
    if (z.is_boundary(tree.root) && z.internal_count() > 0) {
        return "root is a boundary spider";
    }
    for (uint32_t s = 0; s < n; s++) {
        if (s == tree.root) {
            continue;
        }
        int32_t p = tree.parent[s];
        int32_t e = tree.parent_edge[s];
        if (p < 0 || p >= static_cast<int32_t>(n) || e < 0 || e >= static_cast<int32_t>(z.edges.size())) {
            return "spider " + std::to_string(s) + " has no valid parent";
        }
        auto [a, b] = z.edges[e];
        if (!((a == s && b == static_cast<uint32_t>(p)) || (b == s && a == static_cast<uint32_t>(p)))) {
            return "parent edge of spider " + std::to_string(s) + " does not join it to its parent";
        }
        int32_t cur = static_cast<int32_t>(s);
        size_t steps = 0;
        while (cur != static_cast<int32_t>(tree.root)) {
            cur = tree.parent[cur];
            if (cur < 0 || ++steps > n) {
                return "spider " + std::to_string(s) + " does not reach the root";
            }
        }
    }
    auto kids = tree.children();
    std::vector<uint32_t> bad;
    for (uint32_t s = 0; s < n; s++) {
        if (kids[s].empty() && !z.is_boundary(s) && n > 1) {
            bad.push_back(s);
        }
    }
    if (!bad.empty()) {
        std::string msg = "internal spiders as leaves:";
        for (uint32_t s : bad) {
            msg += " " + std::to_string(s);
        }
        return msg;
    }
    return {};
}

SpiderTree build_spider_tree(const ZGraph &z) {
    return build_spider_tree(z, nullptr);
}

SpiderTree build_spider_tree(const ZGraph &z, SpiderTreeTrace *trace) {
    size_t n = z.spider_count();
    if (n == 0) {
        throw std::invalid_argument("build_spider_tree: empty diagram");
    }
    std::vector<uint32_t> parent_set(n);
    std::iota(parent_set.begin(), parent_set.end(), 0);
    auto find = [&](uint32_t x) {
        while (parent_set[x] != x) {
            parent_set[x] = parent_set[parent_set[x]];
            x = parent_set[x];
        }
        return x;
    };
    std::vector<uint32_t> tree_edges;
    std::vector<char> in_tree(z.edges.size(), 0);
    for (uint32_t e = 0; e < z.edges.size(); e++) {
        auto [a, b] = z.edges[e];
        if (z.is_boundary(a) || z.is_boundary(b)) {
            continue;
        }
        uint32_t ra = find(a), rb = find(b);
        if (ra != rb) {
            parent_set[rb] = ra;
            tree_edges.push_back(e);
            in_tree[e] = 1;
        }
    }
    if (trace) {
        trace->forest_edges = tree_edges;
    }
    while (tree_edges.size() + 1 < n) {
        Components comp = analyse(forest_adjacency(z, tree_edges));
        bool found = false;
        std::tuple<int, uint32_t, uint32_t, uint32_t> best{};
        for (uint32_t e = 0; e < z.edges.size(); e++) {
            auto [a, b] = z.edges[e];
            if (comp.id[a] == comp.id[b]) {
                continue;
            }
            int value = std::max({comp.diam[comp.id[a]], comp.diam[comp.id[b]], comp.ecc[a] + 1 + comp.ecc[b]});
            std::tuple<int, uint32_t, uint32_t, uint32_t> key{value, std::min(a, b), std::max(a, b), e};
            if (!found || key < best) {
                best = key;
                found = true;
            }
        }
        if (!found) {
            throw std::invalid_argument("build_spider_tree: diagram is disconnected");
        }
        uint32_t e = std::get<3>(best);
        tree_edges.push_back(e);
        in_tree[e] = 1;
        if (trace) {
            trace->merges.push_back({e, std::get<0>(best)});
        }
    }

    auto bad_count = [&](const std::vector<int> &degree) {
        int count = 0;
        for (uint32_t s = 0; s < n; s++) {
            count += !z.is_boundary(s) && degree[s] == 1;
        }
        return count;
    };
    for (size_t iter = 0; iter < 4 * n; iter++) {
        std::vector<int> degree(n, 0);
        for (uint32_t e : tree_edges) {
            degree[z.edges[e].first]++;
            degree[z.edges[e].second]++;
        }
        int current = bad_count(degree);
        if (current == 0 || n == 1) {
            break;
        }
        Adjacency adj = forest_adjacency(z, tree_edges);
        auto inc = z.incidence();
        bool improved = false;
        for (uint32_t x = 0; x < n && !improved; x++) {
            if (z.is_boundary(x) || degree[x] != 1) {
                continue;
            }
            for (uint32_t add : inc[x]) {
                if (in_tree[add] || z.edges[add].first == z.edges[add].second) {
                    continue;
                }
                uint32_t y = z.other_end(add, x);
                // Tree path from x to y; each of its edges may be swapped out.
                std::vector<int> via(n, -2);
                std::queue<uint32_t> queue;
                via[x] = -1;
                queue.push(x);
                while (!queue.empty()) {
                    uint32_t v = queue.front();
                    queue.pop();
                    for (auto [w, e] : adj[v]) {
                        if (via[w] == -2) {
                            via[w] = static_cast<int>(e);
                            queue.push(w);
                        }
                    }
                }
                std::vector<uint32_t> path;
                for (uint32_t v = y; v != x;) {
                    uint32_t e = static_cast<uint32_t>(via[v]);
                    path.push_back(e);
                    v = z.other_end(e, v);
                }
                std::reverse(path.begin(), path.end());
                for (uint32_t drop : path) {
                    std::vector<int> d2 = degree;
                    d2[x]++;
                    d2[y]++;
                    d2[z.edges[drop].first]--;
                    d2[z.edges[drop].second]--;
                    if (bad_count(d2) < current) {
                        std::replace(tree_edges.begin(), tree_edges.end(), drop, add);
                        in_tree[drop] = 0;
                        in_tree[add] = 1;
                        if (trace) {
                            trace->repairs++;
                        }
                        improved = true;
                        break;
                    }
                }
                if (improved) {
                    break;
                }
            }
        }
        if (!improved) {
            break;
        }
    }

    Adjacency adj = forest_adjacency(z, tree_edges);
    bool has_internal = z.internal_count() > 0;
    uint32_t root = 0;
    int best_ecc = -1;
    for (uint32_t s = 0; s < n; s++) {
        if (has_internal && z.is_boundary(s)) {
            continue;
        }
        int ecc = 0;
        for (int d : forest_distances(adj, s)) {
            ecc = std::max(ecc, d);
        }
        if (best_ecc < 0 || ecc < best_ecc) {
            best_ecc = ecc;
            root = s;
        }
    }
    SpiderTree tree;
    tree.root = root;
    tree.parent.assign(n, -1);
    tree.parent_edge.assign(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<uint32_t> queue;
    queue.push(root);
    seen[root] = 1;
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop();
        auto nbrs = adj[v];
        std::sort(nbrs.begin(), nbrs.end());
        for (auto [w, e] : nbrs) {
            if (!seen[w]) {
                seen[w] = 1;
                tree.parent[w] = static_cast<int32_t>(v);
                tree.parent_edge[w] = static_cast<int32_t>(e);
                queue.push(w);
            }
        }
    }
    std::string problem = spider_tree_problem(z, tree);
    if (!problem.empty()) {
        std::vector<uint32_t> leaves;
        auto kids = tree.children();
        for (uint32_t s = 0; s < n; s++) {
            if (kids[s].empty() && !z.is_boundary(s)) {
                leaves.push_back(s);
            }
        }
        throw SpiderTreeError("build_spider_tree: " + problem, leaves);
    }
    return tree;
}

}  // namespace spidercat
