#include "spidercat/graph_search.h"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

#include "spidercat/nonlocal_cut.h"

namespace spidercat {

MarkedGraph random_cubic(size_t vertex_count, uint64_t seed) {
    if (vertex_count < 4 || vertex_count % 2 != 0) {
        throw std::invalid_argument("random_cubic: vertex count must be even and at least 4");
    }
    Rng rng(seed);
    std::vector<uint32_t> points(3 * vertex_count);
    while (true) {
        for (size_t i = 0; i < points.size(); i++) {
            points[i] = static_cast<uint32_t>(i / 3);
        }
        rng.shuffle(points);
        std::vector<Edge> edges;
        bool simple = true;
        for (size_t i = 0; i < points.size() && simple; i += 2) {
            Edge e{std::min(points[i], points[i + 1]), std::max(points[i], points[i + 1]), 0};
            if (e.u == e.v || std::find(edges.begin(), edges.end(), e) != edges.end()) {
                simple = false;
            }
            edges.push_back(e);
        }
        if (!simple) {
            continue;
        }
        MarkedGraph g(vertex_count, std::move(edges));
        if (g.is_connected()) {
            return g;
        }
    }
}

namespace {

bool adjacent(const MarkedGraph &g, uint32_t a, uint32_t b) {
    for (uint32_t e : g.incident(a)) {
        if (g.other_end(e, a) == b) {
            return true;
        }
    }
    return false;
}

}  // namespace

SwapResult double_edge_swap(const MarkedGraph &g, Rng &rng, int retry_budget) {
    SwapResult result{g, false, 0};
    size_t m = g.edge_count();
    if (m < 2) {
        return result;
    }
    while (result.attempts < retry_budget) {
        result.attempts++;
        size_t i = rng.below(m);
        size_t j = rng.below(m - 1);
        if (j >= i) {
            j++;
        }
        uint32_t a = g.edge(i).u, b = g.edge(i).v;
        uint32_t c = g.edge(j).u, d = g.edge(j).v;
        if (rng.coin()) {
            std::swap(c, d);
        }
        if (a == c || a == d || b == c || b == d) {
            continue;
        }
        // Rewire to (a,c),(b,d).
        if (adjacent(g, a, c) || adjacent(g, b, d)) {
            continue;
        }
        std::vector<Edge> edges;
        edges.reserve(m);
        for (size_t k = 0; k < m; k++) {
            if (k != i && k != j) {
                edges.push_back(g.edge(k));
            }
        }
        edges.push_back({a, c, 0});
        edges.push_back({b, d, 0});
        MarkedGraph next(g.vertex_count(), std::move(edges));
        if (!next.is_connected()) {
            continue;
        }
        result.graph = std::move(next);
        result.swapped = true;
        return result;
    }
    return result;
}

int girth(const MarkedGraph &g) {
    int best = kNoCycle;
    size_t n = g.vertex_count();
    for (size_t i = 0; i < g.edge_count(); i++) {
        if (g.edge(i).u == g.edge(i).v) {
            return 1;
        }
        if (i > 0 && g.edge(i).u == g.edge(i - 1).u && g.edge(i).v == g.edge(i - 1).v) {
            best = 2;
        }
    }
    if (best == 2) {
        return 2;
    }
    std::vector<int> dist(n);
    std::vector<uint32_t> via(n);
    for (uint32_t root = 0; root < n; root++) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<uint32_t> queue;
        dist[root] = 0;
        via[root] = UINT32_MAX;
        queue.push(root);
        while (!queue.empty()) {
            uint32_t v = queue.front();
            queue.pop();
            if (2 * dist[v] + 1 >= best) {
                break;
            }
            for (uint32_t e : g.incident(v)) {
                if (e == via[v]) {
                    continue;
                }
                uint32_t w = g.other_end(e, v);
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    via[w] = e;
                    queue.push(w);
                } else {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

double algebraic_connectivity(const MarkedGraph &g) {
    size_t n = g.vertex_count();
    if (n < 2 || !g.is_connected()) {
        return 0.0;
    }
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const Edge &e : g.edges()) {
        if (e.u == e.v) {
            continue;
        }
        lap(e.u, e.u) += 1;
        lap(e.v, e.v) += 1;
        lap(e.u, e.v) -= 1;
        lap(e.v, e.u) -= 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1);
}

size_t moore_bound(int girth_value) {
    if (girth_value <= 2) {
        return 2;
    }
    int k = girth_value / 2;
    size_t pow = size_t{1} << k;
    if (girth_value % 2 == 1) {
        return 1 + 3 * (pow - 1);
    }
    return 2 * (pow - 1);
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Success:
            return "success";
        case SearchStatus::Failure:
            return "failure";
        case SearchStatus::InfeasibleGirth:
            return "infeasible_girth";
    }
    return "unknown";
}

HillClimbResult hill_climb(const GraphSearchConfig &cfg) {
    if (cfg.vertex_count % 2 != 0 || cfg.vertex_count < 4) {
        throw std::invalid_argument("hill_climb: vertex count must be even and at least 4");
    }
    if (cfg.target_t < 1) {
        throw std::invalid_argument("hill_climb: t must be positive");
    }
    HillClimbResult result;
    result.seed = cfg.seed;
    int t = cfg.target_t;
    if (cfg.vertex_count < moore_bound(t + 1)) {
        result.status = SearchStatus::InfeasibleGirth;
        return result;
    }
    double thresh = cfg.threshold();
    Rng rng(cfg.seed);
    MarkedGraph graph = random_cubic(cfg.vertex_count, rng.next());
    int g = girth(graph);
    double lambda2 = algebraic_connectivity(graph);
    bool checked_current = false;
    for (size_t k = 0; k < cfg.max_iters; k++) {
        result.iterations = k + 1;
        if (g > t && lambda2 >= thresh && !checked_current) {
            checked_current = true;
            result.cut_checks++;
            if (!find_nonlocal_cut(graph, t).has_value()) {
                result.status = SearchStatus::Success;
                result.graph = std::move(graph);
                result.girth = g;
                result.lambda2 = lambda2;
                return result;
            }
        }
        SwapResult swap = double_edge_swap(graph, rng);
        if (!swap.swapped) {
            continue;
        }
        int g2 = girth(swap.graph);
        if (g <= t) {
            if (g2 >= g) {
                graph = std::move(swap.graph);
                g = g2;
                lambda2 = algebraic_connectivity(graph);
                checked_current = false;
            }
        } else if (g2 > t) {
            double lambda2b = algebraic_connectivity(swap.graph);
            if (lambda2b > lambda2) {
                graph = std::move(swap.graph);
                g = g2;
                lambda2 = lambda2b;
                checked_current = false;
            }
        }
    }
    result.status = SearchStatus::Failure;
    result.graph = std::move(graph);
    result.girth = g;
    result.lambda2 = lambda2;
    return result;
}

HillClimbResult hill_climb_restarts(const GraphSearchConfig &cfg, int restarts, int jobs) {
    restarts = std::max(1, restarts);
    jobs = std::max(1, std::min(jobs, restarts));
    std::atomic<int> next{0};
    std::atomic<int> best_index{INT32_MAX};
    std::mutex mu;
    HillClimbResult best;
    HillClimbResult last_failure;
    int last_failure_index = -1;
    auto worker = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= restarts || i > best_index.load()) {
                return;
            }
            GraphSearchConfig c = cfg;
            c.seed = Rng::derive(cfg.seed, static_cast<uint64_t>(i));
            HillClimbResult r = hill_climb(c);
            std::lock_guard<std::mutex> lock(mu);
            if (r.status == SearchStatus::Success) {
                if (i < best_index.load()) {
                    best_index.store(i);
                    best = std::move(r);
                }
            } else if (i > last_failure_index) {
                last_failure_index = i;
                last_failure = std::move(r);
            }
            if (last_failure.status == SearchStatus::InfeasibleGirth) {
                return;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; j++) {
            threads.emplace_back(worker);
        }
        for (auto &th : threads) {
            th.join();
        }
    }
    if (best_index.load() != INT32_MAX) {
        return best;
    }
    return last_failure;
}

}  // namespace spidercat
