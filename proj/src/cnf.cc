#include "spidercat/cnf.h"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "spidercat/errors.h"

namespace spidercat {

int CnfFormula::new_var(const std::string &name) {
    variable_count++;
    if (!name.empty()) {
        names[variable_count] = name;
    }
    return variable_count;
}

void CnfFormula::add(std::vector<int> clause) {
    if (clause.empty()) {
        throw std::invalid_argument("CnfFormula: empty clause");
    }
    for (int lit : clause) {
        if (lit == 0 || std::abs(lit) > variable_count) {
            throw std::invalid_argument("CnfFormula: literal " + std::to_string(lit) + " out of range");
        }
    }
    clauses.push_back(std::move(clause));
}

std::string CnfFormula::to_dimacs() const {
    std::ostringstream out;
    for (const auto &[v, name] : names) {
        out << "c var " << v << " " << name << "\n";
    }
    out << "p cnf " << variable_count << " " << clauses.size() << "\n";
    for (const auto &c : clauses) {
        for (int lit : c) {
            out << lit << " ";
        }
        out << "0\n";
    }
    return out.str();
}

namespace {

struct DimacsBody {
    long long vars = -1;
    long long clause_count = -1;
    unsigned long long top = 0;
    std::vector<std::pair<std::vector<int>, unsigned long long>> clauses;
};

DimacsBody parse_dimacs(std::string_view text, bool weighted) {
    DimacsBody body;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    std::vector<int> current;
    unsigned long long weight = 0;
    bool have_weight = false;
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream words(line);
        std::string head;
        if (!(words >> head) || head == "c" || head[0] == 'c') {
            continue;
        }
        if (head == "p") {
            std::string kind;
            if (body.vars >= 0 || !(words >> kind >> body.vars >> body.clause_count)) {
                throw ParseError("malformed problem line", line_no);
            }
            if (kind != (weighted ? "wcnf" : "cnf")) {
                throw ParseError("unexpected problem kind '" + kind + "'", line_no);
            }
            if (weighted && !(words >> body.top)) {
                throw ParseError("missing top weight", line_no);
            }
            continue;
        }
        if (body.vars < 0) {
            throw ParseError("clause before problem line", line_no);
        }
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            char *end = nullptr;
            long long value = std::strtoll(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0') {
                throw ParseError("bad token '" + tok + "'", line_no);
            }
            if (weighted && !have_weight) {
                if (value <= 0) {
                    throw ParseError("weights must be positive", line_no);
                }
                weight = static_cast<unsigned long long>(value);
                have_weight = true;
                continue;
            }
            if (value == 0) {
                body.clauses.emplace_back(std::move(current), weight);
                current.clear();
                have_weight = false;
            } else {
                if (std::llabs(value) > body.vars) {
                    throw ParseError("literal out of range", line_no);
                }
                current.push_back(static_cast<int>(value));
            }
        }
    }
    if (body.vars < 0) {
        throw ParseError("missing problem line", line_no);
    }
    if (!current.empty() || have_weight) {
        throw ParseError("unterminated clause", line_no);
    }
    if (static_cast<long long>(body.clauses.size()) != body.clause_count) {
        throw ParseError("clause count does not match header", line_no);
    }
    return body;
}

}  // namespace

CnfFormula CnfFormula::from_dimacs(std::string_view text) {
    DimacsBody body = parse_dimacs(text, false);
    CnfFormula f;
    f.variable_count = static_cast<int>(body.vars);
    for (auto &[c, w] : body.clauses) {
        if (c.empty()) {
            throw ParseError("empty clause", 0);
        }
        f.clauses.push_back(std::move(c));
    }
    return f;
}

void add_at_most(CnfFormula &f, const std::vector<int> &lits, int k) {
    int n = static_cast<int>(lits.size());
    if (k >= n) {
        return;
    }
    if (k < 0) {
        int v = f.new_var();
        f.add({v});
        f.add({-v});
        return;
    }
    if (k == 0) {
        for (int x : lits) {
            f.add({-x});
        }
        return;
    }
    // s[i][j]: at least j+1 of the first i+1 literals are true.
    std::vector<std::vector<int>> s(n - 1, std::vector<int>(k));
    for (int i = 0; i < n - 1; i++) {
        for (int j = 0; j < k; j++) {
            s[i][j] = f.new_var();
        }
    }
    f.add({-lits[0], s[0][0]});
    for (int j = 1; j < k; j++) {
        f.add({-s[0][j]});
    }
    for (int i = 1; i < n - 1; i++) {
        f.add({-lits[i], s[i][0]});
        f.add({-s[i - 1][0], s[i][0]});
        for (int j = 1; j < k; j++) {
            f.add({-lits[i], -s[i - 1][j - 1], s[i][j]});
            f.add({-s[i - 1][j], s[i][j]});
        }
        f.add({-lits[i], -s[i - 1][k - 1]});
    }
    f.add({-lits[n - 1], -s[n - 2][k - 1]});
}

void add_at_least(CnfFormula &f, const std::vector<int> &lits, int k) {
    if (k <= 0) {
        return;
    }
    if (k > static_cast<int>(lits.size())) {
        // Unsatisfiable: force a contradiction on a fresh variable.
        int v = f.new_var();
        f.add({v});
        f.add({-v});
        return;
    }
    std::vector<int> neg;
    for (int x : lits) {
        neg.push_back(-x);
    }
    add_at_most(f, neg, static_cast<int>(lits.size()) - k);
}

void WcnfFormula::add_soft(std::vector<int> clause, uint64_t weight) {
    if (weight == 0) {
        throw std::invalid_argument("WcnfFormula: soft weight must be positive");
    }
    for (int lit : clause) {
        if (lit == 0 || std::abs(lit) > hard.variable_count) {
            throw std::invalid_argument("WcnfFormula: literal out of range");
        }
    }
    soft.emplace_back(std::move(clause), weight);
}

uint64_t WcnfFormula::soft_total() const {
    uint64_t total = 0;
    for (const auto &[c, w] : soft) {
        total += w;
    }
    return total;
}

std::string WcnfFormula::to_wdimacs() const {
    std::ostringstream out;
    for (const auto &[v, name] : hard.names) {
        out << "c var " << v << " " << name << "\n";
    }
    uint64_t t = top();
    out << "p wcnf " << hard.variable_count << " " << hard.clauses.size() + soft.size() << " " << t << "\n";
    for (const auto &c : hard.clauses) {
        out << t;
        for (int lit : c) {
            out << " " << lit;
        }
        out << " 0\n";
    }
    for (const auto &[c, w] : soft) {
        out << w;
        for (int lit : c) {
            out << " " << lit;
        }
        out << " 0\n";
    }
    return out.str();
}

WcnfFormula WcnfFormula::from_wdimacs(std::string_view text) {
    DimacsBody body = parse_dimacs(text, true);
    WcnfFormula f;
    f.hard.variable_count = static_cast<int>(body.vars);
    for (auto &[c, w] : body.clauses) {
        if (w >= body.top) {
            if (c.empty()) {
                throw ParseError("empty hard clause", 0);
            }
            f.hard.clauses.push_back(std::move(c));
        } else {
            f.soft.emplace_back(std::move(c), w);
        }
    }
    return f;
}

}  // namespace spidercat
