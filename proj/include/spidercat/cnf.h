#ifndef SPIDERCAT_CNF_H
#define SPIDERCAT_CNF_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spidercat {

/// Clauses over variables 1..variable_count; literal -v negates v.
struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
    std::map<int, std::string> names;

    int new_var(const std::string &name = {});
    /// Throws std::invalid_argument on empty clauses or out-of-range literals.
    void add(std::vector<int> clause);

    std::string to_dimacs() const;
    static CnfFormula from_dimacs(std::string_view text);
};

/// Sequential-counter encoding of sum(lits) <= k.
void add_at_most(CnfFormula &f, const std::vector<int> &lits, int k);
/// sum(lits) >= k, encoded as at most |lits| - k of the negations.
void add_at_least(CnfFormula &f, const std::vector<int> &lits, int k);

struct WcnfFormula {
    CnfFormula hard;
    std::vector<std::pair<std::vector<int>, uint64_t>> soft;

    void add_soft(std::vector<int> clause, uint64_t weight);
    uint64_t soft_total() const;
    uint64_t top() const {
        return soft_total() + 1;
    }

    std::string to_wdimacs() const;
    static WcnfFormula from_wdimacs(std::string_view text);
};

}  // namespace spidercat

#endif
