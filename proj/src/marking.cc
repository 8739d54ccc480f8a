#include "spidercat/marking.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "spidercat/robustness.h"
#include "spidercat/zgraph.h"

namespace spidercat {

namespace {

std::vector<uint32_t> edge_neighbors(const MarkedGraph &g, uint32_t e) {
    std::vector<uint32_t> out;
    for (uint32_t end : {g.edge(e).u, g.edge(e).v}) {
        for (uint32_t f : g.incident(end)) {
            if (f != e && std::find(out.begin(), out.end(), f) == out.end()) {
                out.push_back(f);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::vector<uint32_t>> enumerate_subtrees(const MarkedGraph &g, size_t max_size) {
    if (max_size < 1) {
        throw std::invalid_argument("enumerate_subtrees: max_size must be at least 1");
    }
    std::vector<std::vector<uint32_t>> all;
    std::set<std::vector<uint32_t>> layer;
    for (uint32_t v = 0; v < g.vertex_count(); v++) {
        layer.insert({v});
    }
    for (size_t size = 1; size <= max_size && !layer.empty(); size++) {
        all.insert(all.end(), layer.begin(), layer.end());
        if (size == max_size) {
            break;
        }
        std::set<std::vector<uint32_t>> next;
        for (const auto &s : layer) {
            for (uint32_t v : s) {
                for (uint32_t e : g.incident(v)) {
                    uint32_t w = g.other_end(e, v);
                    if (std::binary_search(s.begin(), s.end(), w)) {
                        continue;
                    }
                    std::vector<uint32_t> grown = s;
                    grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
                    next.insert(std::move(grown));
                }
            }
        }
        layer = std::move(next);
    }
    return all;
}

MarkingEncoding marking_encoding(const MarkedGraph &g, int t) {
    if (t < 2) {
        throw std::invalid_argument("marking_constraints: t must be at least 2");
    }
    MarkingEncoding enc;
    CnfFormula &hard = enc.wcnf.hard;
    size_t m = g.edge_count();
    for (size_t e = 0; e < m; e++) {
        enc.x.push_back(hard.new_var("x_" + std::to_string(g.edge(e).u) + "_" + std::to_string(g.edge(e).v)));
    }
    if (t == 2) {
        for (size_t e = 0; e < m; e++) {
            enc.y.push_back(hard.new_var("y_" + std::to_string(g.edge(e).u) + "_" + std::to_string(g.edge(e).v)));
            hard.add({-enc.y[e], enc.x[e]});
        }
    } else if (t == 3) {
        for (int x : enc.x) {
            hard.add({x});
        }
    } else if (t == 4) {
        for (uint32_t e = 0; e < m; e++) {
            std::vector<int> c{-enc.x[e]};
            for (uint32_t f : edge_neighbors(g, e)) {
                c.push_back(-enc.x[f]);
            }
            hard.add(c);
        }
    } else if (t == 5) {
        for (uint32_t v = 0; v < g.vertex_count(); v++) {
            std::vector<int> c;
            for (uint32_t e : g.incident(v)) {
                if (std::find(c.begin(), c.end(), -enc.x[e]) == c.end()) {
                    c.push_back(-enc.x[e]);
                }
            }
            hard.add(c);
        }
    } else if (t == 7) {
        for (uint32_t e = 0; e < m; e++) {
            std::vector<int> c;
            for (uint32_t f : edge_neighbors(g, e)) {
                c.push_back(-enc.x[f]);
            }
            if (c.empty()) {
                throw std::invalid_argument("marking_constraints: edge without neighbours");
            }
            hard.add(c);
        }
    } else {
        for (const auto &s : enumerate_subtrees(g, static_cast<size_t>(t - 2))) {
            std::set<uint32_t> touched;
            for (uint32_t v : s) {
                for (uint32_t e : g.incident(v)) {
                    touched.insert(e);
                }
            }
            std::vector<int> lits;
            for (uint32_t e : touched) {
                lits.push_back(enc.x[e]);
            }
            add_at_most(hard, lits, t);
        }
    }
    for (int x : enc.x) {
        enc.wcnf.add_soft({x}, 1);
    }
    for (int y : enc.y) {
        enc.wcnf.add_soft({y}, 1);
    }
    return enc;
}

WcnfFormula marking_constraints(const MarkedGraph &g, int t) {
    return marking_encoding(g, t).wcnf;
}

MarkingResult solve_marking(const MarkedGraph &g, int t, const SolverBackend &backend, const MarkingOptions &options) {
    MarkedGraph base = g.unmarked();
    MarkingEncoding enc = marking_encoding(base, t);
    std::vector<int> objective = enc.x;
    objective.insert(objective.end(), enc.y.begin(), enc.y.end());
    std::vector<std::vector<int>> blockers;
    MarkingResult result;
    RobustnessOptions robust_options;
    robust_options.jobs = options.jobs;
    int bound = static_cast<int>(objective.size());
    int rounds = 0;
    while (bound >= 0) {
        CnfFormula f = enc.wcnf.hard;
        for (const auto &c : blockers) {
            f.add(c);
        }
        add_at_least(f, objective, bound);
        SolveResult r = solve_cnf(f, backend);
        result.sat_calls++;
        if (r.status == SolveStatus::Timeout) {
            throw SolverError("marking search timed out at bound " + std::to_string(bound));
        }
        if (r.status == SolveStatus::Unsat) {
            bound--;
            continue;
        }
        std::vector<int> marks(base.edge_count(), 0);
        for (size_t e = 0; e < base.edge_count(); e++) {
            marks[e] = r.model[enc.x[e]] ? 1 : 0;
            if (!enc.y.empty() && r.model[enc.y[e]]) {
                marks[e] = marks[e] ? 2 : 1;
            }
        }
        MarkedGraph candidate = base.with_marks(marks);
        std::vector<uint32_t> source;
        ZGraph z = to_zgraph(candidate, &source);
        RobustnessReport report = is_t_robust(z, t, robust_options);
        if (report.robust()) {
            result.graph = candidate;
            result.marks = candidate.mark_count();
            result.feasible = result.marks >= options.min_marks;
            return result;
        }
        if (++rounds > options.max_rounds) {
            throw std::runtime_error("solve_marking: too many refinement rounds");
        }
        // Keep weight+1 marks on each side; any marking containing them admits the
        // same violating cut.
        const Cut &cut = *report.counterexample;
        int keep = cut.weight() + 1;
        std::vector<char> far(z.spider_count(), 0);
        for (uint32_t s : cut.side_b) {
            far[s] = 1;
        }
        std::map<uint32_t, int> per_edge;
        int taken[2] = {0, 0};
        for (size_t i = 0; i < z.outputs.size(); i++) {
            uint32_t spider = z.outputs[i];
            int side = far[spider];
            if (taken[side] >= keep) {
                continue;
            }
            taken[side]++;
            // The z-edge entering boundary spider `spider` lies on its graph edge.
            uint32_t graph_edge = UINT32_MAX;
            for (uint32_t ze = 0; ze < z.edges.size(); ze++) {
                if (z.edges[ze].second == spider) {
                    graph_edge = source[ze];
                    break;
                }
            }
            per_edge[graph_edge]++;
        }
        std::vector<int> clause;
        for (const auto &[e, count] : per_edge) {
            clause.push_back(count >= 2 ? -enc.y[e] : -enc.x[e]);
        }
        blockers.push_back(clause);
        result.blocking_clauses++;
    }
    result.feasible = false;
    return result;
}

}  // namespace spidercat
