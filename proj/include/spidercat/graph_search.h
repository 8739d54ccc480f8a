#ifndef SPIDERCAT_GRAPH_SEARCH_H
#define SPIDERCAT_GRAPH_SEARCH_H

#include <climits>
#include <cstdint>
#include <optional>
#include <string>

#include "spidercat/marked_graph.h"
#include "spidercat/rng.h"

namespace spidercat {

constexpr int kNoCycle = INT_MAX;

/// Uniform-ish random simple connected cubic graph from the pairing model.
/// Throws std::invalid_argument for odd or too small vertex counts.
MarkedGraph random_cubic(size_t vertex_count, uint64_t seed);

struct SwapResult {
    MarkedGraph graph;
    bool swapped = false;
    int attempts = 0;
};

/// Rewires two disjoint edges (a,b),(c,d) into (a,c),(b,d) or (a,d),(b,c), rejecting
/// moves that create loops, parallel edges or disconnect the graph. After
/// `retry_budget` rejected attempts the input is returned with swapped=false.
SwapResult double_edge_swap(const MarkedGraph &g, Rng &rng, int retry_budget = 200);

/// Length of a shortest cycle, or kNoCycle for forests.
int girth(const MarkedGraph &g);

/// Second smallest Laplacian eigenvalue; exactly 0 for disconnected graphs.
double algebraic_connectivity(const MarkedGraph &g);

/// Smallest possible order of a cubic graph with the given girth.
size_t moore_bound(int girth_value);

struct GraphSearchConfig {
    int target_t = 1;
    size_t vertex_count = 4;
    size_t max_iters = 20000;
    uint64_t seed = 0;
    std::optional<double> lambda_thresh;

    double threshold() const {
        return lambda_thresh ? *lambda_thresh : 10.0 / 3.0 * target_t / static_cast<double>(vertex_count);
    }
};

enum class SearchStatus { Success, Failure, InfeasibleGirth };

std::string to_string(SearchStatus s);

struct HillClimbResult {
    SearchStatus status = SearchStatus::Failure;
    MarkedGraph graph;
    size_t iterations = 0;
    size_t cut_checks = 0;
    int girth = 0;
    double lambda2 = 0;
    uint64_t seed = 0;
};

/// Randomized girth-then-spectral hill climbing towards a cubic graph without a
/// nonlocal t-cut. A successful result always has girth > t and is certified free
/// of nonlocal t-cuts.
HillClimbResult hill_climb(const GraphSearchConfig &cfg);

/// Runs hill_climb with seeds Rng::derive(cfg.seed, i) for i < restarts and returns
/// the successful run with the lowest index (or the last failure). Deterministic for
/// any `jobs`.
HillClimbResult hill_climb_restarts(const GraphSearchConfig &cfg, int restarts, int jobs);

}  // namespace spidercat

#endif
