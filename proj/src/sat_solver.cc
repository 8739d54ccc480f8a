#include "spidercat/sat_solver.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spidercat {

namespace {

inline int lit_code(int dimacs) {
    return dimacs > 0 ? 2 * (dimacs - 1) : 2 * (-dimacs - 1) + 1;
}
inline int var_of(int code) {
    return code >> 1;
}

class Cdcl {
   public:
    Cdcl(const CnfFormula &f, const SolverBackend &cfg) : nv_(f.variable_count), cfg_(cfg) {
        assign_.assign(nv_, -1);
        level_.assign(nv_, 0);
        reason_.assign(nv_, -1);
        phase_.assign(nv_, 0);
        seen_.assign(nv_, 0);
        activity_.assign(nv_, 0.0);
        heap_pos_.assign(nv_, -1);
        watches_.assign(2 * static_cast<size_t>(nv_), {});
        for (int v = 0; v < nv_; v++) {
            heap_insert(v);
        }
        for (const auto &clause : f.clauses) {
            std::vector<int> c;
            for (int lit : clause) {
                c.push_back(lit_code(lit));
            }
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            bool tautology = false;
            for (size_t i = 1; i < c.size(); i++) {
                if (var_of(c[i]) == var_of(c[i - 1])) {
                    tautology = true;
                }
            }
            if (tautology) {
                continue;
            }
            if (c.size() == 1) {
                int v = lit_value(c[0]);
                if (v == 0) {
                    unsat_ = true;
                } else if (v < 0) {
                    enqueue(c[0], -1);
                }
                continue;
            }
            add_clause(std::move(c), false);
        }
    }

    SolveResult run() {
        SolveResult result;
        auto start = std::chrono::steady_clock::now();
        if (unsat_ || propagate() >= 0) {
            result.status = SolveStatus::Unsat;
            return result;
        }
        uint64_t restart_index = 0;
        uint64_t next_restart = 100 * luby(restart_index);
        uint64_t conflicts_since_restart = 0;
        uint64_t next_reduce = 2000;
        while (true) {
            int confl = propagate();
            if (confl >= 0) {
                conflicts_++;
                conflicts_since_restart++;
                if (decision_level() == 0) {
                    result.status = SolveStatus::Unsat;
                    result.conflicts = conflicts_;
                    return result;
                }
                std::vector<int> learnt;
                int back = analyze(confl, learnt);
                backtrack(back);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    int ci = add_clause(learnt, true);
                    enqueue(learnt[0], ci);
                }
                var_inc_ /= 0.95;
                if ((conflicts_ & 255) == 0 && out_of_budget(start)) {
                    result.status = SolveStatus::Timeout;
                    result.conflicts = conflicts_;
                    return result;
                }
                continue;
            }
            if (conflicts_since_restart >= next_restart) {
                backtrack(0);
                conflicts_since_restart = 0;
                next_restart = 100 * luby(++restart_index);
                if (conflicts_ >= next_reduce) {
                    next_reduce = conflicts_ + 2000 + 300 * (++reductions_);
                    reduce_and_simplify();
                }
                continue;
            }
            int v = pick_branch();
            if (v < 0) {
                result.status = SolveStatus::Sat;
                result.model.assign(nv_ + 1, false);
                for (int i = 0; i < nv_; i++) {
                    result.model[i + 1] = assign_[i] == 1;
                }
                result.conflicts = conflicts_;
                return result;
            }
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(2 * v + (phase_[v] ? 0 : 1), -1);
        }
    }

   private:
    struct Clause {
        std::vector<int> lits;
        bool learnt = false;
        int lbd = 0;
    };

    int nv_;
    SolverBackend cfg_;
    bool unsat_ = false;
    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> assign_, level_, reason_, trail_, trail_lim_;
    std::vector<char> phase_, seen_;
    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int> heap_, heap_pos_;
    size_t qhead_ = 0;
    uint64_t conflicts_ = 0;
    uint64_t reductions_ = 0;

    static uint64_t luby(uint64_t i) {
        uint64_t size = 1, seq = 0;
        while (size < i + 1) {
            seq++;
            size = 2 * size + 1;
        }
        while (size - 1 != i) {
            size = (size - 1) >> 1;
            seq--;
            i = i % size;
        }
        return uint64_t{1} << seq;
    }

    bool out_of_budget(std::chrono::steady_clock::time_point start) const {
        if (cfg_.conflict_budget && conflicts_ >= cfg_.conflict_budget) {
            return true;
        }
        if (cfg_.time_limit_seconds > 0) {
            double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return elapsed >= cfg_.time_limit_seconds;
        }
        return false;
    }

    int decision_level() const {
        return static_cast<int>(trail_lim_.size());
    }

    int lit_value(int code) const {
        int a = assign_[var_of(code)];
        return a < 0 ? -1 : (a ^ (code & 1));
    }

    void enqueue(int code, int reason) {
        int v = var_of(code);
        assign_[v] = (code & 1) ? 0 : 1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(code);
    }

    int add_clause(std::vector<int> lits, bool learnt) {
        int ci = static_cast<int>(clauses_.size());
        watches_[lits[0]].push_back(ci);
        watches_[lits[1]].push_back(ci);
        Clause c;
        c.lits = std::move(lits);
        c.learnt = learnt;
        if (learnt) {
            std::vector<int> levels;
            for (int l : c.lits) {
                levels.push_back(level_[var_of(l)]);
            }
            std::sort(levels.begin(), levels.end());
            c.lbd = static_cast<int>(std::unique(levels.begin(), levels.end()) - levels.begin());
        }
        clauses_.push_back(std::move(c));
        return ci;
    }

    // Watch lists are indexed by the watched literal; they are visited when that
    // literal becomes false.
    int propagate() {
        while (qhead_ < trail_.size()) {
            int false_lit = trail_[qhead_++] ^ 1;
            std::vector<int> &ws = watches_[false_lit];
            size_t i = 0, j = 0;
            while (i < ws.size()) {
                int ci = ws[i++];
                std::vector<int> &c = clauses_[ci].lits;
                if (c[0] == false_lit) {
                    std::swap(c[0], c[1]);
                }
                if (lit_value(c[0]) == 1) {
                    ws[j++] = ci;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); k++) {
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    continue;
                }
                ws[j++] = ci;
                if (lit_value(c[0]) == 0) {
                    while (i < ws.size()) {
                        ws[j++] = ws[i++];
                    }
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(j);
        }
        return -1;
    }

    int analyze(int confl, std::vector<int> &learnt) {
        learnt.assign(1, -1);
        int path = 0;
        int p = -1;
        int idx = static_cast<int>(trail_.size()) - 1;
        do {
            Clause &c = clauses_[confl];
            for (size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); k++) {
                int q = c.lits[k];
                int v = var_of(q);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump(v);
                    if (level_[v] >= decision_level()) {
                        path++;
                    } else {
                        learnt.push_back(q);
                    }
                }
            }
            while (!seen_[var_of(trail_[idx])]) {
                idx--;
            }
            p = trail_[idx];
            idx--;
            confl = reason_[var_of(p)];
            seen_[var_of(p)] = 0;
            path--;
        } while (path > 0);
        learnt[0] = p ^ 1;

        // Drop literals implied by the rest of the clause.
        std::vector<int> kept{learnt[0]};
        for (size_t k = 1; k < learnt.size(); k++) {
            int v = var_of(learnt[k]);
            int r = reason_[v];
            bool redundant = r >= 0;
            if (redundant) {
                const std::vector<int> &rc = clauses_[r].lits;
                for (size_t m = 1; m < rc.size(); m++) {
                    int w = var_of(rc[m]);
                    if (!seen_[w] && level_[w] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (!redundant) {
                kept.push_back(learnt[k]);
            }
        }
        for (size_t k = 1; k < learnt.size(); k++) {
            seen_[var_of(learnt[k])] = 0;
        }
        learnt = std::move(kept);

        int back = 0;
        if (learnt.size() > 1) {
            size_t best = 1;
            for (size_t k = 2; k < learnt.size(); k++) {
                if (level_[var_of(learnt[k])] > level_[var_of(learnt[best])]) {
                    best = k;
                }
            }
            std::swap(learnt[1], learnt[best]);
            back = level_[var_of(learnt[1])];
        }
        return back;
    }

    void backtrack(int level) {
        if (decision_level() <= level) {
            return;
        }
        for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[level]; i--) {
            int v = var_of(trail_[i]);
            phase_[v] = assign_[v] == 1;
            assign_[v] = -1;
            reason_[v] = -1;
            if (heap_pos_[v] < 0) {
                heap_insert(v);
            }
        }
        trail_.resize(trail_lim_[level]);
        trail_lim_.resize(level);
        qhead_ = trail_.size();
    }

    void reduce_and_simplify() {
        std::vector<int> learnt_ids;
        for (int ci = 0; ci < static_cast<int>(clauses_.size()); ci++) {
            if (clauses_[ci].learnt) {
                learnt_ids.push_back(ci);
            }
        }
        std::stable_sort(learnt_ids.begin(), learnt_ids.end(), [&](int a, int b) {
            if (clauses_[a].lbd != clauses_[b].lbd) {
                return clauses_[a].lbd < clauses_[b].lbd;
            }
            return clauses_[a].lits.size() < clauses_[b].lits.size();
        });
        std::vector<char> drop(clauses_.size(), 0);
        for (size_t k = learnt_ids.size() / 2; k < learnt_ids.size(); k++) {
            if (clauses_[learnt_ids[k]].lbd > 2) {
                drop[learnt_ids[k]] = 1;
            }
        }
        std::vector<Clause> kept;
        for (int ci = 0; ci < static_cast<int>(clauses_.size()); ci++) {
            if (drop[ci]) {
                continue;
            }
            Clause c = std::move(clauses_[ci]);
            bool satisfied = false;
            std::vector<int> lits;
            for (int l : c.lits) {
                int val = lit_value(l);
                if (val == 1) {
                    satisfied = true;
                    break;
                }
                if (val < 0) {
                    lits.push_back(l);
                }
            }
            if (satisfied) {
                continue;
            }
            c.lits = std::move(lits);
            kept.push_back(std::move(c));
        }
        clauses_ = std::move(kept);
        for (auto &w : watches_) {
            w.clear();
        }
        for (int ci = 0; ci < static_cast<int>(clauses_.size()); ci++) {
            watches_[clauses_[ci].lits[0]].push_back(ci);
            watches_[clauses_[ci].lits[1]].push_back(ci);
        }
        for (int v = 0; v < nv_; v++) {
            reason_[v] = -1;
        }
    }

    void bump(int v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) {
            for (double &a : activity_) {
                a *= 1e-100;
            }
            var_inc_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0) {
            heap_up(heap_pos_[v]);
        }
    }

    int pick_branch() {
        while (!heap_.empty()) {
            int v = heap_pop();
            if (assign_[v] < 0) {
                return v;
            }
        }
        return -1;
    }

    bool heap_less(int a, int b) const {
        if (activity_[a] != activity_[b]) {
            return activity_[a] > activity_[b];
        }
        return a < b;
    }
    void heap_insert(int v) {
        heap_pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        heap_up(heap_pos_[v]);
    }
    void heap_up(int i) {
        int v = heap_[i];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (!heap_less(v, heap_[parent])) {
                break;
            }
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
    int heap_pop() {
        int top = heap_[0];
        heap_pos_[top] = -1;
        int last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            int i = 0;
            int n = static_cast<int>(heap_.size());
            while (true) {
                int child = 2 * i + 1;
                if (child >= n) {
                    break;
                }
                if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) {
                    child++;
                }
                if (!heap_less(heap_[child], last)) {
                    break;
                }
                heap_[i] = heap_[child];
                heap_pos_[heap_[i]] = i;
                i = child;
            }
            heap_[i] = last;
            heap_pos_[last] = i;
        }
        return top;
    }
};

std::string shell_quote(const std::string &s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

SolveResult solve_external(const CnfFormula &f, const SolverBackend &backend) {
    char name[] = "/tmp/spidercat-XXXXXX.cnf";
    int fd = mkstemps(name, 4);
    if (fd < 0) {
        throw SolverError("cannot create temporary DIMACS file");
    }
    std::string body = f.to_dimacs();
    bool written = ::write(fd, body.data(), body.size()) == static_cast<ssize_t>(body.size());
    ::close(fd);
    if (!written) {
        std::remove(name);
        throw SolverError("cannot write temporary DIMACS file");
    }
    std::string cmd = shell_quote(backend.path) + " " + shell_quote(name) + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::remove(name);
        throw SolverError("cannot launch solver '" + backend.path + "'");
    }
    std::string output;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        output.append(buffer, got);
    }
    int status = pclose(pipe);
    std::remove(name);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0 && code != 10 && code != 20) {
        throw SolverError("solver '" + backend.path + "' exited with status " + std::to_string(code));
    }
    SolveResult result;
    std::istringstream in(output);
    std::string line;
    bool have_status = false;
    std::vector<int> values;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string head;
        if (!(words >> head)) {
            continue;
        }
        if (head == "s") {
            std::string verdict;
            std::getline(words, verdict);
            verdict.erase(0, verdict.find_first_not_of(' '));
            if (verdict == "SATISFIABLE") {
                result.status = SolveStatus::Sat;
            } else if (verdict == "UNSATISFIABLE") {
                result.status = SolveStatus::Unsat;
            } else {
                result.status = SolveStatus::Timeout;
            }
            have_status = true;
        } else if (head == "v") {
            int lit;
            while (words >> lit) {
                if (lit != 0) {
                    values.push_back(lit);
                }
            }
        }
    }
    if (!have_status) {
        throw SolverError("solver '" + backend.path + "' printed no status line");
    }
    if (result.status == SolveStatus::Sat) {
        result.model.assign(f.variable_count + 1, false);
        for (int lit : values) {
            if (std::abs(lit) <= f.variable_count) {
                result.model[std::abs(lit)] = lit > 0;
            }
        }
        if (!model_satisfies(f, result.model)) {
            throw SolverError("solver '" + backend.path + "' returned a model that violates the formula");
        }
    }
    return result;
}

}  // namespace

SolverBackend SolverBackend::parse(const std::string &spec) {
    if (spec.empty() || spec == "internal") {
        return internal();
    }
    const std::string prefix = "external:";
    if (spec.rfind(prefix, 0) == 0) {
        return external(spec.substr(prefix.size()));
    }
    return external(spec);
}

std::string SolverBackend::describe() const {
    return kind == Kind::Internal ? "internal" : "external:" + path;
}

SolveResult solve_cnf(const CnfFormula &f, const SolverBackend &backend) {
    if (backend.kind == SolverBackend::Kind::External) {
        return solve_external(f, backend);
    }
    Cdcl solver(f, backend);
    return solver.run();
}

bool model_satisfies(const CnfFormula &f, const std::vector<bool> &model) {
    if (model.size() < static_cast<size_t>(f.variable_count) + 1) {
        return false;
    }
    for (const auto &c : f.clauses) {
        bool ok = false;
        for (int lit : c) {
            if (model[std::abs(lit)] == (lit > 0)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Sat:
            return "sat";
        case SolveStatus::Unsat:
            return "unsat";
        case SolveStatus::Timeout:
            return "timeout";
    }
    return "unknown";
}

}  // namespace spidercat
