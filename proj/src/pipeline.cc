#include "spidercat/pipeline.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "spidercat/bounds.h"
#include "spidercat/constructions.h"
#include "spidercat/extract.h"
#include "spidercat/families.h"
#include "spidercat/graph_search.h"
#include "spidercat/marking.h"
#include "spidercat/monte_carlo.h"
#include "spidercat/robustness.h"
#include "spidercat/spider_tree.h"
#include "spidercat/stabilizer.h"
#include "spidercat/zgraph.h"

namespace spidercat {

using Json = nlohmann::ordered_json;

SynthMode parse_mode(const std::string &s) {
    if (s == "optimal") {
        return SynthMode::Optimal;
    }
    if (s == "recursive") {
        return SynthMode::Recursive;
    }
    if (s == "shallow") {
        return SynthMode::Shallow;
    }
    throw std::invalid_argument("unknown mode '" + s + "' (expected optimal, recursive or shallow)");
}

VerifyLevel parse_verify_level(const std::string &s) {
    if (s == "none") {
        return VerifyLevel::None;
    }
    if (s == "graph") {
        return VerifyLevel::Graph;
    }
    if (s == "full") {
        return VerifyLevel::Full;
    }
    throw std::invalid_argument("unknown verify level '" + s + "' (expected none, graph or full)");
}

const char *to_string(SynthMode m) {
    switch (m) {
        case SynthMode::Optimal:
            return "optimal";
        case SynthMode::Recursive:
            return "recursive";
        case SynthMode::Shallow:
            return "shallow";
    }
    return "?";
}

const char *to_string(VerifyLevel v) {
    switch (v) {
        case VerifyLevel::None:
            return "none";
        case VerifyLevel::Graph:
            return "graph";
        case VerifyLevel::Full:
            return "full";
    }
    return "?";
}

void PipelineConfig::validate() const {
    if (n < 3) {
        throw std::invalid_argument("n must be at least 3");
    }
    if (t < 1) {
        throw std::invalid_argument("t must be at least 1");
    }
    if (mode == SynthMode::Recursive && n < t + 1) {
        throw std::invalid_argument("recursive mode needs n >= t + 1");
    }
    if (jobs < 1) {
        throw std::invalid_argument("jobs must be positive");
    }
    if (restarts < 1) {
        throw std::invalid_argument("restarts must be positive");
    }
}

namespace {

using Clock = std::chrono::steady_clock;

Json resources_json(const Circuit &c) {
    ResourceCounts r = resource_counts(c);
    return Json{{"cnots", r.cnots}, {"cnot_depth", r.cnot_depth}, {"ancillas", r.ancillas}, {"flags", r.flags}};
}

Json bounds_json(int n, int t) {
    LowerBounds lb = lower_bounds(n, t);
    return Json{{"cnot_lb", lb.cnot_lb},
                {"flag_lb", lb.flag_lb},
                {"vertex_ratio", lb.vertex_ratio.str()},
                {"exact", lb.exact}};
}

int marks_on_vertex(const MarkedGraph &g, uint32_t v) {
    int total = 0;
    for (uint32_t e : g.incident(v)) {
        total += g.edges()[e].marks;
    }
    return total;
}

struct GraphStage {
    bool ok = false;
    MarkedGraph graph;
    Json search;
    Json infeasibility;
};

// Finds a t-robust marked cubic graph with exactly n marks on the target vertex count.
GraphStage find_marked_graph(const PipelineConfig &cfg, Json &report) {
    GraphStage stage;
    int n = cfg.n;
    int t = cfg.t;
    Ratio r = optimal_ratio(t);
    int64_t v = std::max<int64_t>(2, r.ceil_times(n));
    if (v % 2 != 0) {
        v++;
    }
    report["vertex_target"] = v;

    std::vector<MarkedGraph> fixed;
    if (v == 2) {
        fixed.push_back(moebius_ladder(2));
    } else if (static_cast<size_t>(v) < moore_bound(t + 1)) {
        stage.infeasibility = Json{{"reason", "girth"},
                                   {"certified", true},
                                   {"vertex_target", v},
                                   {"moore_bound", moore_bound(t + 1)},
                                   {"best_marks", 0}};
        return stage;
    }

    int best_marks = -1;
    int attempts = 0;
    int successes = 0;
    Json search = Json::array();
    auto try_graph = [&](const MarkedGraph &g) -> bool {
        MarkingOptions mo;
        mo.min_marks = n;
        mo.jobs = cfg.jobs;
        MarkingResult m = solve_marking(g, t, cfg.solver, mo);
        best_marks = std::max(best_marks, m.marks);
        search.back()["marks"] = m.marks;
        search.back()["sat_calls"] = m.sat_calls;
        search.back()["blocking_clauses"] = m.blocking_clauses;
        if (!m.feasible) {
            return false;
        }
        std::optional<MarkedGraph> trimmed = trim_marks(m.graph, n, t, cfg.jobs);
        if (!trimmed) {
            return false;
        }
        stage.graph = *trimmed;
        stage.ok = true;
        return true;
    };

    if (!fixed.empty()) {
        for (const MarkedGraph &g : fixed) {
            attempts++;
            successes++;
            search.push_back(Json{{"graph", "theta"}});
            if (try_graph(g)) {
                break;
            }
        }
    } else {
        for (int i = 0; i < cfg.restarts && !stage.ok; i++) {
            GraphSearchConfig gc;
            gc.target_t = t;
            gc.vertex_count = static_cast<size_t>(v);
            gc.max_iters = cfg.max_iters;
            gc.seed = Rng::derive(cfg.seed, static_cast<uint64_t>(i));
            HillClimbResult h = hill_climb(gc);
            attempts++;
            search.push_back(Json{{"restart", i},
                                  {"status", to_string(h.status)},
                                  {"iterations", h.iterations},
                                  {"cut_checks", h.cut_checks},
                                  {"girth", h.girth == kNoCycle ? -1 : h.girth}});
            if (h.status != SearchStatus::Success) {
                continue;
            }
            successes++;
            try_graph(h.graph);
        }
    }
    stage.search = Json{{"attempts", attempts}, {"graphs_found", successes}, {"runs", search}};
    if (!stage.ok) {
        stage.infeasibility = Json{{"reason", successes == 0 ? "search_exhausted" : "marking"},
                                   {"certified", false},
                                   {"vertex_target", v},
                                   {"best_marks", std::max(best_marks, 0)}};
    }
    return stage;
}

}  // namespace

std::optional<MarkedGraph> trim_marks(const MarkedGraph &g, int n, int t, int jobs) {
    MarkedGraph cur = g;
    RobustnessOptions ro;
    ro.jobs = jobs;
    while (cur.mark_count() > n) {
        std::vector<uint32_t> order;
        for (uint32_t e = 0; e < cur.edge_count(); e++) {
            if (cur.edges()[e].marks > 0) {
                order.push_back(e);
            }
        }
        auto density = [&](uint32_t e) {
            return marks_on_vertex(cur, cur.edges()[e].u) + marks_on_vertex(cur, cur.edges()[e].v);
        };
        std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            int ma = cur.edges()[a].marks, mb = cur.edges()[b].marks;
            if (ma != mb) {
                return ma > mb;
            }
            return density(a) > density(b);
        });
        bool removed = false;
        for (uint32_t e : order) {
            std::vector<int> marks;
            for (const Edge &ed : cur.edges()) {
                marks.push_back(ed.marks);
            }
            marks[e]--;
            MarkedGraph next = cur.with_marks(marks);
            if (is_t_robust(next, t, ro).robust()) {
                cur = std::move(next);
                removed = true;
                break;
            }
        }
        if (!removed) {
            return std::nullopt;
        }
    }
    return cur;
}

Json fault_report_json(const FaultReport &r) {
    Json j{{"verdict", to_string(r.verdict)},
           {"t", r.t},
           {"locations", r.locations},
           {"combos_checked", r.combos_checked},
           {"exhaustive", r.exhaustive},
           {"sampled_weights", r.sampled_weights}};
    if (r.counterexample) {
        Json sites = Json::array();
        std::string paulis;
        for (size_t i = 0; i < r.counterexample->sites.size(); i++) {
            sites.push_back(Json{{"qubit", r.counterexample->sites[i].qubit},
                                 {"after_op", r.counterexample->sites[i].after_op}});
            paulis += pauli_char(r.counterexample->paulis[i]);
        }
        j["counterexample"] = Json{{"sites", sites},
                                   {"paulis", paulis},
                                   {"residual_output_weight", r.counterexample->residual_output_weight}};
    }
    return j;
}

VerifyOutcome verify_circuit(const Circuit &c, int n, int t, VerifyLevel level, const FaultCheckOptions &options,
                             bool timing) {
    auto start = Clock::now();
    VerifyOutcome out;
    Json &j = out.report;
    j["schema"] = 1;
    j["circuit_hash"] = c.hash_hex();
    j["n"] = c.outputs.size();
    j["t"] = t;
    j["level"] = to_string(level);
    auto finish = [&](const char *verdict, int code) {
        j["verdict"] = verdict;
        if (!j.contains("combos_checked")) {
            j["combos_checked"] = 0;
        }
        j["runtime_ms"] = timing ? Json(std::chrono::duration<double, std::milli>(Clock::now() - start).count())
                                 : Json(nullptr);
        out.exit_code = code;
        return out;
    };
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        j["error"] = e.what();
        return finish("invalid_circuit", kExitFailure);
    }
    if (n != 0 && c.outputs.size() != static_cast<size_t>(n)) {
        return finish("wrong_size", kExitFailure);
    }
    SimulationResult sim;
    try {
        sim = simulate(c);
    } catch (const UnsatisfiablePostselection &e) {
        j["error"] = e.what();
        return finish("unsatisfiable_postselection", kExitFailure);
    }
    bool cat = sim.deterministic && is_cat(sim.state, c.outputs.size());
    j["deterministic"] = sim.deterministic;
    j["cat"] = cat;
    if (!cat) {
        return finish("not_cat", kExitFailure);
    }
    if (level != VerifyLevel::Full) {
        return finish("cat", kExitOk);
    }
    FaultReport fr = check_ft(c, t, options);
    Json fj = fault_report_json(fr);
    j["model"] = to_string(options.model);
    j["locations"] = fr.locations;
    j["combos_checked"] = fr.combos_checked;
    j["exhaustive"] = fr.exhaustive;
    j["sampled_weights"] = fr.sampled_weights;
    if (fj.contains("counterexample")) {
        j["counterexample"] = fj["counterexample"];
    }
    return finish(to_string(fr.verdict), fr.ft() ? kExitOk : kExitFailure);
}

SynthesisOutcome synthesize(const PipelineConfig &cfg) {
    auto start = Clock::now();
    SynthesisOutcome out;
    Json &j = out.report;
    j["schema"] = 1;
    j["command"] = "synthesize";
    j["n"] = cfg.n;
    j["t"] = cfg.t;
    j["mode"] = to_string(cfg.mode);
    j["seed"] = cfg.seed;
    j["solver"] = cfg.solver.describe();
    j["verify_level"] = to_string(cfg.verify_level);
    auto finish = [&](const char *status, int code) {
        j["status"] = status;
        j["exit_code"] = code;
        j["runtime_ms"] = cfg.timing ? Json(std::chrono::duration<double, std::milli>(Clock::now() - start).count())
                                     : Json(nullptr);
        out.exit_code = code;
        return out;
    };
    try {
        cfg.validate();
        j["lower_bounds"] = bounds_json(cfg.n, cfg.t);

        std::optional<ZGraph> z;
        if (cfg.mode == SynthMode::Recursive) {
            out.circuit = recursive_cat(static_cast<uint32_t>(cfg.n), cfg.t);
        } else {
            if (cfg.t == 1) {
                j["vertex_target"] = 0;
                z = cycle_zgraph(static_cast<size_t>(cfg.n));
            } else {
                GraphStage stage = find_marked_graph(cfg, j);
                if (!stage.search.is_null()) {
                    j["graph_search"] = stage.search;
                }
                if (!stage.ok) {
                    j["infeasibility"] = stage.infeasibility;
                    return finish("infeasible", kExitInfeasible);
                }
                out.graph = stage.graph;
                j["vertex_count"] = stage.graph.vertex_count();
                j["marks"] = stage.graph.mark_count();
                j["vertex_ratio"] = stage.graph.vertex_ratio().str();
                z = to_zgraph(stage.graph);
            }
            if (cfg.mode == SynthMode::Optimal) {
                SpiderTree tree = build_spider_tree(*z);
                j["spider_tree"] = Json{{"root", tree.root}, {"diameter", tree.diameter()}};
                out.circuit = extract_circuit(*z, tree);
            } else {
                out.circuit = shallow_cat(*z);
            }
        }

        j["circuit_hash"] = out.circuit->hash_hex();
        j["resources"] = resources_json(*out.circuit);

        Json verification;
        bool ok = true;
        if (cfg.verify_level != VerifyLevel::None && z) {
            RobustnessOptions ro;
            ro.jobs = cfg.jobs;
            RobustnessReport rr = is_t_robust(*z, cfg.t, ro);
            verification["robust"] = rr.robust();
            ok = ok && rr.robust();
        }
        if (cfg.verify_level == VerifyLevel::Full) {
            FaultCheckOptions fo;
            fo.jobs = cfg.jobs;
            fo.seed = cfg.seed;
            VerifyOutcome v = verify_circuit(*out.circuit, cfg.n, cfg.t, VerifyLevel::Full, fo, false);
            v.report.erase("schema");
            v.report.erase("runtime_ms");
            verification["circuit"] = v.report;
            ok = ok && v.exit_code == kExitOk;
        }
        if (!verification.is_null()) {
            j["verification"] = verification;
        }
        if (!ok) {
            return finish("verification_failed", kExitFailure);
        }
        return finish("ok", kExitOk);
    } catch (const std::exception &e) {
        j["error"] = e.what();
        return finish("error", kExitFailure);
    }
}

void write_artifacts(const SynthesisOutcome &outcome, const std::string &dir) {
    std::filesystem::create_directories(dir);
    std::filesystem::path base(dir);
    if (outcome.graph) {
        std::ofstream(base / "graph.txt") << outcome.graph->to_text();
    }
    if (outcome.circuit) {
        std::ofstream(base / "circuit.txt") << outcome.circuit->to_text();
    }
    std::ofstream(base / "report.json") << outcome.report.dump(2) << "\n";
}

Json bench_report(const Circuit &c, int t, double p, uint64_t shots, uint64_t seed, int jobs) {
    MonteCarloOptions mo;
    mo.jobs = jobs;
    MonteCarloResult r = monte_carlo(c, t, p, shots, seed, mo);
    return Json{{"schema", 1},
                {"command", "bench"},
                {"circuit_hash", c.hash_hex()},
                {"n", c.outputs.size()},
                {"t", t},
                {"p", p},
                {"shots", r.shots},
                {"seed", seed},
                {"accepted", r.accepted},
                {"failures", r.failures},
                {"acceptance_rate", r.acceptance_rate},
                {"acceptance_ci95", {r.acceptance_ci.lo, r.acceptance_ci.hi}},
                {"p_over_t", r.p_over_t},
                {"p_over_t_ci95", {r.p_over_t_ci.lo, r.p_over_t_ci.hi}},
                {"resources", resources_json(c)}};
}

}  // namespace spidercat
