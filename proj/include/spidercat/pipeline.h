#ifndef SPIDERCAT_PIPELINE_H
#define SPIDERCAT_PIPELINE_H

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "spidercat/circuit.h"
#include "spidercat/fault_check.h"
#include "spidercat/marked_graph.h"
#include "spidercat/sat_solver.h"

namespace spidercat {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInfeasible = 2, kExitParseError = 3 };

enum class SynthMode { Optimal, Recursive, Shallow };
enum class VerifyLevel { None, Graph, Full };

SynthMode parse_mode(const std::string &s);
VerifyLevel parse_verify_level(const std::string &s);
const char *to_string(SynthMode m);
const char *to_string(VerifyLevel v);

struct PipelineConfig {
    int n = 0;
    int t = 0;
    SynthMode mode = SynthMode::Optimal;
    uint64_t seed = 0;
    SolverBackend solver = SolverBackend::internal();
    std::string out_dir;
    VerifyLevel verify_level = VerifyLevel::Full;
    int jobs = 1;
    int restarts = 16;
    size_t max_iters = 20000;
    bool timing = false;

    /// Throws std::invalid_argument on n < 3, t < 1 or mode-specific violations.
    void validate() const;
};

struct SynthesisOutcome {
    int exit_code = kExitFailure;
    std::optional<MarkedGraph> graph;
    std::optional<Circuit> circuit;
    nlohmann::ordered_json report;
};

/// Optimal mode: vertex target V = ceil(r_t n) rounded up to even, hill-climb
/// restarts for a cubic graph without small nonlocal cuts, maximum marking, mark
/// trimming down to n, spider tree, extraction. Recursive and shallow modes call
/// their constructors. Never throws for infeasible inputs; the outcome carries the
/// exit code and a JSON report.
SynthesisOutcome synthesize(const PipelineConfig &cfg);

/// Writes graph.txt (when present), circuit.txt and report.json under `dir`.
void write_artifacts(const SynthesisOutcome &outcome, const std::string &dir);

/// Removes marks until exactly `n` remain, taking from the most-marked edge first,
/// then the edge whose endpoints carry the most marks, then the lowest edge id, and
/// skipping any removal that breaks t-robustness. Returns nullopt when stuck.
std::optional<MarkedGraph> trim_marks(const MarkedGraph &g, int n, int t, int jobs = 1);

struct VerifyOutcome {
    int exit_code = kExitFailure;
    nlohmann::ordered_json report;
};

/// simulate + is_cat + check_ft (check_ft skipped for VerifyLevel::Graph and None).
/// `n` = 0 accepts any output count.
VerifyOutcome verify_circuit(const Circuit &c, int n, int t, VerifyLevel level, const FaultCheckOptions &options,
                             bool timing = false);

nlohmann::ordered_json fault_report_json(const FaultReport &r);

/// Monte Carlo summary with resource counts.
nlohmann::ordered_json bench_report(const Circuit &c, int t, double p, uint64_t shots, uint64_t seed, int jobs);

}  // namespace spidercat

#endif
