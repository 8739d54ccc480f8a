#include <gtest/gtest.h>

#include "spidercat/cnf.h"
#include "spidercat/errors.h"
#include "spidercat/rng.h"
#include "spidercat/sat_solver.h"

using namespace spidercat;

namespace {

bool brute_force_sat(const CnfFormula &f) {
    int n = f.variable_count;
    for (uint32_t mask = 0; mask < (1u << n); mask++) {
        bool all = true;
        for (const auto &c : f.clauses) {
            bool sat = false;
            for (int lit : c) {
                bool value = mask >> (std::abs(lit) - 1) & 1;
                if ((lit > 0) == value) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) {
            return true;
        }
    }
    return false;
}

CnfFormula random_3sat(int vars, int clauses, uint64_t seed) {
    Rng rng(seed);
    CnfFormula f;
    for (int v = 0; v < vars; v++) {
        f.new_var();
    }
    for (int c = 0; c < clauses; c++) {
        std::vector<int> clause;
        for (int k = 0; k < 3; k++) {
            int v = 1 + static_cast<int>(rng.below(vars));
            clause.push_back(rng.coin() ? v : -v);
        }
        f.add(clause);
    }
    return f;
}

CnfFormula pigeonhole(int pigeons, int holes) {
    CnfFormula f;
    auto var = [&](int p, int h) { return p * holes + h + 1; };
    for (int i = 0; i < pigeons * holes; i++) {
        f.new_var();
    }
    for (int p = 0; p < pigeons; p++) {
        std::vector<int> c;
        for (int h = 0; h < holes; h++) {
            c.push_back(var(p, h));
        }
        f.add(c);
    }
    for (int h = 0; h < holes; h++) {
        for (int p = 0; p < pigeons; p++) {
            for (int q = p + 1; q < pigeons; q++) {
                f.add({-var(p, h), -var(q, h)});
            }
        }
    }
    return f;
}

}  // namespace

TEST(Sat, RandomInstancesMatchBruteForce) {
    int sat_count = 0;
    for (uint64_t s = 0; s < 300; s++) {
        int vars = 4 + static_cast<int>(s % 9);
        CnfFormula f = random_3sat(vars, static_cast<int>(4.26 * vars + (s % 5) - 2), s);
        SolveResult r = solve_cnf(f);
        bool expected = brute_force_sat(f);
        ASSERT_EQ(r.status == SolveStatus::Sat, expected) << f.to_dimacs();
        if (expected) {
            EXPECT_TRUE(model_satisfies(f, r.model));
            sat_count++;
        }
    }
    EXPECT_GT(sat_count, 50);
    EXPECT_LT(sat_count, 280);
}

TEST(Sat, PigeonholeIsUnsat) {
    for (int holes = 2; holes <= 6; holes++) {
        EXPECT_EQ(solve_cnf(pigeonhole(holes + 1, holes)).status, SolveStatus::Unsat) << holes;
        EXPECT_EQ(solve_cnf(pigeonhole(holes, holes)).status, SolveStatus::Sat) << holes;
    }
}

TEST(Sat, CardinalityEncodingsAreExact) {
    for (int n = 1; n <= 6; n++) {
        for (int k = -1; k <= n + 1; k++) {
            for (bool at_most : {true, false}) {
                CnfFormula base;
                std::vector<int> lits;
                for (int i = 0; i < n; i++) {
                    lits.push_back(base.new_var());
                }
                if (at_most) {
                    add_at_most(base, lits, k);
                } else {
                    add_at_least(base, lits, k);
                }
                for (uint32_t mask = 0; mask < (1u << n); mask++) {
                    CnfFormula f = base;
                    for (int i = 0; i < n; i++) {
                        f.add({mask >> i & 1 ? lits[i] : -lits[i]});
                    }
                    int count = __builtin_popcount(mask);
                    bool expected = at_most ? count <= k : count >= k;
                    EXPECT_EQ(solve_cnf(f).status == SolveStatus::Sat, expected)
                        << "n=" << n << " k=" << k << " at_most=" << at_most << " mask=" << mask;
                }
            }
        }
    }
}

TEST(Sat, DimacsRoundTrip) {
    CnfFormula f = random_3sat(7, 20, 11);
    CnfFormula g = CnfFormula::from_dimacs(f.to_dimacs());
    EXPECT_EQ(g.variable_count, f.variable_count);
    EXPECT_EQ(g.clauses, f.clauses);
    EXPECT_THROW(CnfFormula::from_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
    EXPECT_THROW(CnfFormula::from_dimacs("1 2 0\n"), ParseError);

    WcnfFormula w;
    int a = w.hard.new_var(), b = w.hard.new_var();
    w.hard.add({a, b});
    w.add_soft({-a}, 2);
    w.add_soft({-b}, 3);
    EXPECT_EQ(w.top(), 6u);
    WcnfFormula back = WcnfFormula::from_wdimacs(w.to_wdimacs());
    EXPECT_EQ(back.hard.clauses, w.hard.clauses);
    EXPECT_EQ(back.soft, w.soft);
}

TEST(Sat, ExternalBackendAgreesWithInternal) {
    SolverBackend ext = SolverBackend::parse(SPIDERCAT_DIMACS_SOLVER);
    EXPECT_EQ(ext.kind, SolverBackend::Kind::External);
    EXPECT_EQ(SolverBackend::parse("internal").kind, SolverBackend::Kind::Internal);
    for (uint64_t s = 0; s < 20; s++) {
        CnfFormula f = random_3sat(10, 42, 900 + s);
        SolveResult in = solve_cnf(f);
        SolveResult out = solve_cnf(f, ext);
        EXPECT_EQ(in.status, out.status);
        if (out.status == SolveStatus::Sat) {
            EXPECT_TRUE(model_satisfies(f, out.model));
        }
    }
    EXPECT_THROW(solve_cnf(pigeonhole(3, 2), SolverBackend::external("/nonexistent/solver")), SolverError);
}

TEST(Sat, ConflictBudgetReportsTimeout) {
    SolverBackend limited;
    limited.conflict_budget = 5;
    EXPECT_EQ(solve_cnf(pigeonhole(9, 8), limited).status, SolveStatus::Timeout);
}
