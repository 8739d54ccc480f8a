#include "spidercat/families.h"

#include <stdexcept>
#include <string>

#include "spidercat/robustness.h"

namespace spidercat {

MarkedGraph moebius_ladder(size_t vertex_count, int marks_per_edge) {
    if (vertex_count < 2 || vertex_count % 2 != 0) {
        throw std::invalid_argument("moebius_ladder: vertex count must be even and positive");
    }
    uint32_t n = static_cast<uint32_t>(vertex_count);
    std::vector<Edge> edges;
    for (uint32_t i = 0; i < n; i++) {
        edges.push_back({i, (i + 1) % n, marks_per_edge});
    }
    for (uint32_t i = 0; i < n / 2; i++) {
        edges.push_back({i, i + n / 2, marks_per_edge});
    }
    return MarkedGraph(vertex_count, std::move(edges));
}

MarkedGraph prism_graph(size_t rungs) {
    if (rungs < 3) {
        throw std::invalid_argument("prism_graph: need at least three rungs");
    }
    uint32_t m = static_cast<uint32_t>(rungs);
    std::vector<Edge> edges;
    for (uint32_t i = 0; i < m; i++) {
        edges.push_back({i, (i + 1) % m, 0});
        edges.push_back({m + i, m + (i + 1) % m, 0});
        edges.push_back({i, m + i, 0});
    }
    return MarkedGraph(2 * rungs, std::move(edges));
}

MarkedGraph complete_k4() {
    return moebius_ladder(4);
}

MarkedGraph k33() {
    return moebius_ladder(6);
}

MarkedGraph generalized_petersen(size_t n, size_t k) {
    if (n < 3 || k < 1 || 2 * k >= n) {
        throw std::invalid_argument("generalized_petersen: need 1 <= k < n/2");
    }
    uint32_t nn = static_cast<uint32_t>(n), kk = static_cast<uint32_t>(k);
    std::vector<Edge> edges;
    for (uint32_t i = 0; i < nn; i++) {
        edges.push_back({i, (i + 1) % nn, 0});
        edges.push_back({i, nn + i, 0});
        edges.push_back({nn + i, nn + (i + kk) % nn, 0});
    }
    return MarkedGraph(2 * n, std::move(edges));
}

MarkedGraph petersen() {
    return generalized_petersen(5, 2);
}

MarkedGraph heawood() {
    std::vector<Edge> edges;
    for (uint32_t i = 0; i < 14; i++) {
        edges.push_back({i, (i + 1) % 14, 0});
        if (i % 2 == 0) {
            edges.push_back({i, (i + 5) % 14, 0});
        }
    }
    return MarkedGraph(14, std::move(edges));
}

MarkedGraph honeycomb_torus(size_t k, size_t twist, HoneycombClass unmarked) {
    if (k < 1) {
        throw std::invalid_argument("honeycomb_torus: k must be positive");
    }
    auto p = [&](size_t i, size_t j) { return static_cast<uint32_t>(2 * (i % k + k * (j % k))); };
    std::vector<Edge> edges;
    auto mark = [&](HoneycombClass c) { return c == unmarked ? 0 : 1; };
    for (size_t j = 0; j < k; j++) {
        for (size_t i = 0; i < k; i++) {
            uint32_t a = p(i, j);
            edges.push_back({a, a + 1, mark(HoneycombClass::Rung)});
            edges.push_back({a, p(i + 1, j) + 1, mark(HoneycombClass::Horizontal)});
            size_t up_i = j + 1 == k ? i + twist : i;
            edges.push_back({a, p(up_i, j + 1) + 1, mark(HoneycombClass::Vertical)});
        }
    }
    return MarkedGraph(2 * k * k, std::move(edges));
}

namespace {

bool certified(const MarkedGraph &g, int t, int jobs) {
    RobustnessOptions options;
    options.jobs = jobs;
    return g.is_connected() && is_t_robust(g, t, options).robust();
}

// Unmarked edge triples of the Petersen graph meeting the local t=4 condition,
// expressed as (edge class, index mod 5) so they lift to GP(5k, 2).
MarkedGraph lifted_petersen_marking(int k, int jobs) {
    MarkedGraph base = petersen();
    size_t n = 5 * static_cast<size_t>(k);
    MarkedGraph lifted = generalized_petersen(n, 2);
    auto edge_class = [](const MarkedGraph &g, size_t e, size_t n) {
        const Edge &ed = g.edge(e);
        if (ed.v < n) {
            // outer cycle edge; identify by its lower-index end around the cycle
            size_t i = (ed.u + 1) % n == ed.v ? ed.u : ed.v;
            return std::make_pair(0, i % 5);
        }
        if (ed.u < n) {
            return std::make_pair(1, static_cast<size_t>(ed.u) % 5);
        }
        size_t a = ed.u - n, b = ed.v - n;
        size_t i = (a + 2) % n == b ? a : b;
        return std::make_pair(2, i % 5);
    };
    size_t m = base.edge_count();
    for (size_t x = 0; x < m; x++) {
        for (size_t y = x + 1; y < m; y++) {
            for (size_t z = y + 1; z < m; z++) {
                std::vector<int> marks(m, 1);
                marks[x] = marks[y] = marks[z] = 0;
                bool local_ok = true;
                for (size_t e = 0; e < m && local_ok; e++) {
                    if (!marks[e]) {
                        continue;
                    }
                    bool has_unmarked_neighbor = false;
                    for (uint32_t end : {base.edge(e).u, base.edge(e).v}) {
                        for (uint32_t f : base.incident(end)) {
                            has_unmarked_neighbor |= f != e && !marks[f];
                        }
                    }
                    local_ok = has_unmarked_neighbor;
                }
                if (!local_ok) {
                    continue;
                }
                std::vector<std::pair<int, size_t>> unmarked_classes = {
                    edge_class(base, x, 5), edge_class(base, y, 5), edge_class(base, z, 5)};
                std::vector<int> lifted_marks(lifted.edge_count(), 1);
                for (size_t e = 0; e < lifted.edge_count(); e++) {
                    auto c = edge_class(lifted, e, n);
                    for (const auto &u : unmarked_classes) {
                        if (u == c) {
                            lifted_marks[e] = 0;
                        }
                    }
                }
                MarkedGraph candidate = lifted.with_marks(lifted_marks);
                if (certified(candidate, 4, jobs)) {
                    return candidate;
                }
            }
        }
    }
    throw std::runtime_error("optimal_family: no certified t=4 marking for k=" + std::to_string(k));
}

}  // namespace

MarkedGraph optimal_family(int t, int k, int jobs) {
    if (t < 2 || t > 5) {
        throw std::invalid_argument("optimal_family: t must be in {2,3,4,5}");
    }
    if (k < 1) {
        throw std::invalid_argument("optimal_family: k must be positive");
    }
    if (t == 4) {
        return lifted_petersen_marking(k, jobs);
    }
    if (t == 2 || t == 3) {
        MarkedGraph g = t == 2 ? moebius_ladder(2 * static_cast<size_t>(k), 2)
                               : moebius_ladder(2 * (static_cast<size_t>(k) + 2), 1);
        if (!certified(g, t, jobs)) {
            throw std::runtime_error("optimal_family: ladder member failed certification");
        }
        return g;
    }
    size_t kk = static_cast<size_t>(k);
    for (HoneycombClass c : {HoneycombClass::Rung, HoneycombClass::Horizontal, HoneycombClass::Vertical}) {
        for (size_t twist = 0; twist < kk; twist++) {
            MarkedGraph g = honeycomb_torus(kk, twist, c);
            if (certified(g, 5, jobs)) {
                return g;
            }
        }
    }
    throw std::runtime_error("optimal_family: no certified t=5 torus for k=" + std::to_string(k));
}

}  // namespace spidercat
