#ifndef SPIDERCAT_SAT_SOLVER_H
#define SPIDERCAT_SAT_SOLVER_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spidercat/cnf.h"

namespace spidercat {

enum class SolveStatus { Sat, Unsat, Timeout };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    /// model[v] for v in 1..variable_count (index 0 unused); empty unless Sat.
    std::vector<bool> model;
    uint64_t conflicts = 0;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverBackend {
    enum class Kind { Internal, External };
    Kind kind = Kind::Internal;
    std::string path;
    /// 0 disables the limit.
    uint64_t conflict_budget = 0;
    double time_limit_seconds = 0;

    static SolverBackend internal() {
        return {};
    }
    static SolverBackend external(std::string path) {
        SolverBackend b;
        b.kind = Kind::External;
        b.path = std::move(path);
        return b;
    }
    /// "internal" or an executable path (optionally prefixed with "external:").
    static SolverBackend parse(const std::string &spec);
    std::string describe() const;
};

/// Internal backend: CDCL with two watched literals, first-UIP learning, VSIDS,
/// phase saving and Luby restarts. External backend: DIMACS file handed to
/// `path cnf_file`, whose `s`/`v` output lines are parsed.
SolveResult solve_cnf(const CnfFormula &f, const SolverBackend &backend = {});

bool model_satisfies(const CnfFormula &f, const std::vector<bool> &model);

std::string to_string(SolveStatus s);

}  // namespace spidercat

#endif
