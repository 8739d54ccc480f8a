#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "corpus.h"
#include "spidercat/constructions.h"
#include "spidercat/fault_check.h"
#include "spidercat/monte_carlo.h"
#include "spidercat/pauli_frame.h"
#include "spidercat/rng.h"
#include "spidercat/robustness.h"
#include "spidercat/stabilizer.h"
#include "spidercat/xor_search.h"

using namespace spidercat;
using spidercat::testing::CorpusEntry;

namespace {

const std::vector<CorpusEntry> &corpus() {
    static const std::vector<CorpusEntry> c = spidercat::testing::robust_corpus();
    return c;
}

uint64_t choose(uint64_t n, uint64_t k) {
    double r = 1;
    for (uint64_t i = 1; i <= k; i++) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return static_cast<uint64_t>(std::llround(r));
}

// CAT group conjugated by X on `flipped` and by Z when `z_odd`.
StabilizerState shifted_cat(const std::vector<uint8_t> &flipped, bool z_odd) {
    size_t n = flipped.size();
    StabilizerState s = cat_group(n);
    for (PauliString &g : s.generators) {
        bool anti = false;
        for (size_t q = 0; q < n; q++) {
            if (g.get_z(q) && flipped[q]) {
                anti = !anti;
            }
            if (g.get_x(q) && z_odd && q == 0) {
                anti = !anti;
            }
        }
        g.negative ^= anti;
    }
    return s;
}

}  // namespace

TEST(XorSearch, ColexOrderAndJobsInvariance) {
    Rng rng(5);
    for (int trial = 0; trial < 40; trial++) {
        size_t items = 6 + rng.below(14);
        size_t bits = 1 + rng.below(90);
        XorTable table(items, bits);
        for (size_t i = 0; i < items; i++) {
            for (size_t b = 0; b < bits; b++) {
                if (rng.below(3) == 0) {
                    table.set(i, b);
                }
            }
        }
        uint64_t target = rng.below(4);
        auto pred = [&](const uint64_t *acc, int, const uint32_t *) {
            return popcount_range(acc, 0, bits) <= target;
        };
        // Brute force in colex order: sort subsets of each size by reversed item tuple.
        std::optional<std::vector<uint32_t>> expected;
        uint64_t expected_checked = 0;
        for (int f = 1; f <= 3 && !expected; f++) {
            std::vector<std::vector<uint32_t>> subsets;
            for (uint32_t mask = 0; mask < (1u << items); mask++) {
                if (__builtin_popcount(mask) == f) {
                    std::vector<uint32_t> s;
                    for (uint32_t i = 0; i < items; i++) {
                        if (mask >> i & 1) {
                            s.push_back(i);
                        }
                    }
                    subsets.push_back(s);
                }
            }
            std::sort(subsets.begin(), subsets.end(), [](const auto &a, const auto &b) {
                return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
            });
            for (size_t k = 0; k < subsets.size(); k++) {
                EXPECT_EQ(colex_rank(subsets[k]), k);
                std::vector<uint64_t> acc(table.words, 0);
                for (uint32_t i : subsets[k]) {
                    for (size_t w = 0; w < table.words; w++) {
                        acc[w] ^= table.row(i)[w];
                    }
                }
                expected_checked++;
                if (popcount_range(acc.data(), 0, bits) <= target) {
                    expected = subsets[k];
                    break;
                }
            }
        }
        for (int jobs : {1, 3}) {
            XorSearchResult r = dispatch_words(table.words, [&]<size_t W>() {
                return xor_search_exhaustive<W>(widen(table, W), 3, 1, pred, jobs);
            });
            ASSERT_EQ(r.hit.has_value(), expected.has_value());
            if (expected) {
                EXPECT_EQ(r.hit->items, *expected);
            }
            EXPECT_EQ(r.checked, expected_checked);
        }
    }
    EXPECT_EQ(binomial(60, 30), 118264581564861424ull);
    EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

TEST(FaultCheck, SitesCoverQubitLifetimes) {
    Circuit c = fanout_ladder(3);
    std::vector<FaultSite> sites = fault_sites(c);
    // One site per gap between consecutive events on a qubit.
    std::vector<FaultSite> expected = {{0, 0}, {1, 1}, {2, 2}, {1, 3}};
    EXPECT_EQ(sites, expected);
    EXPECT_TRUE(std::is_sorted(sites.begin(), sites.end(), [](const FaultSite &a, const FaultSite &b) {
        return std::tie(a.after_op, a.qubit) < std::tie(b.after_op, b.qubit);
    }));
}

TEST(FaultCheck, GraphAndCircuitVerdictsAgree) {
    int violated = 0;
    for (const CorpusEntry &e : corpus()) {
        if (e.circuit.outputs.size() > 14 && e.t > 3) {
            continue;
        }
        FaultReport r = check_ft(e.circuit, e.t);
        EXPECT_TRUE(r.ft()) << e.name;
        EXPECT_TRUE(r.exhaustive);
        EXPECT_EQ(r.locations, fault_sites(e.circuit).size());
        uint64_t total = 0;
        for (int f = 1; f <= e.t; f++) {
            total += choose(r.locations, f);
        }
        EXPECT_EQ(r.combos_checked, total) << e.name;

        if (e.graph && e.graph->vertex_count() <= 10) {
            MarkedGraph heavy = e.graph->with_marks(std::vector<int>(e.graph->edge_count(), 2));
            ZGraph hz = to_zgraph(heavy);
            Circuit hc = extract_circuit(hz, build_spider_tree(hz));
            FaultReport hr = check_ft(hc, e.t);
            EXPECT_EQ(hr.ft(), is_t_robust(hz, e.t).robust()) << e.name;
            if (!hr.ft()) {
                violated++;
                ASSERT_TRUE(hr.counterexample.has_value());
                EXPECT_TRUE(revalidate_counterexample(hc, *hr.counterexample, FaultModel::XOnly));
                EXPECT_GT(hr.counterexample->residual_output_weight,
                          static_cast<int>(hr.counterexample->sites.size()));
            }
        }
    }
    EXPECT_GT(violated, 3);
}

TEST(FaultCheck, LadderIsNotFaultTolerant) {
    FaultReport r = check_ft(fanout_ladder(4), 1);
    EXPECT_FALSE(r.ft());
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_EQ(r.counterexample->sites.size(), 1u);
    EXPECT_EQ(r.counterexample->residual_output_weight, 2);
    EXPECT_TRUE(revalidate_counterexample(fanout_ladder(4), *r.counterexample, FaultModel::XOnly));
    EXPECT_TRUE(check_ft(fanout_ladder(3), 1).ft());
}

TEST(FaultCheck, FullPauliAuditAgreesOnSmallCorpus) {
    for (const CorpusEntry &e : corpus()) {
        if (e.t > 3 || e.circuit.outputs.size() > 12) {
            continue;
        }
        FaultCheckOptions opts;
        opts.model = FaultModel::FullPauli;
        FaultReport r = check_ft(e.circuit, e.t, opts);
        EXPECT_TRUE(r.ft()) << e.name;
        uint64_t total = 0;
        for (int f = 1; f <= e.t; f++) {
            total += choose(3 * r.locations, f);
        }
        EXPECT_EQ(r.combos_checked, total);
    }
}

TEST(FaultCheck, SamplingKicksInAboveBudget) {
    const CorpusEntry &e = corpus()[5];
    FaultCheckOptions opts;
    opts.exhaustive_budget = 10;
    opts.samples = 5000;
    FaultReport r = check_ft(e.circuit, e.t, opts);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_FALSE(r.sampled_weights.empty());
    EXPECT_TRUE(r.ft());
}

TEST(FaultCheck, JobsDoNotChangeReport) {
    MarkedGraph g = corpus()[5].graph.value();
    ZGraph hz = to_zgraph(g.with_marks(std::vector<int>(g.edge_count(), 2)));
    Circuit c = extract_circuit(hz, build_spider_tree(hz));
    FaultCheckOptions one, four;
    four.jobs = 4;
    FaultReport a = check_ft(c, 3, one), b = check_ft(c, 3, four);
    EXPECT_EQ(a.ft(), b.ft());
    EXPECT_EQ(a.combos_checked, b.combos_checked);
    ASSERT_EQ(a.counterexample.has_value(), b.counterexample.has_value());
    if (a.counterexample) {
        EXPECT_EQ(a.counterexample->sites, b.counterexample->sites);
    }
}

TEST(PauliFrame, AgreesWithTableauOnRandomFaults) {
    Rng rng(99);
    int rejected = 0, accepted = 0;
    for (int trial = 0; trial < 1000; trial++) {
        const CorpusEntry &e = corpus()[rng.below(corpus().size())];
        const Circuit &c = e.circuit;
        FrameSimulator sim(c);
        std::vector<FaultSite> sites = fault_sites(c);
        std::vector<InjectedPauli> faults;
        int count = 1 + static_cast<int>(rng.below(3));
        for (int k = 0; k < count; k++) {
            const FaultSite &s = sites[rng.below(sites.size())];
            faults.push_back({s.after_op, s.qubit, static_cast<PauliKind>(1 + rng.below(3))});
        }
        FaultPropagation prop = propagate_faults(sim, faults, true);
        TableauRun run = run_tableau(c, faults);
        ASSERT_EQ(prop.detected, run.rejected) << e.name << " trial " << trial;
        if (run.rejected) {
            rejected++;
            continue;
        }
        accepted++;
        ASSERT_TRUE(run.pure);
        EXPECT_TRUE(run.outputs.same_group(shifted_cat(prop.output_x, prop.output_z_parity)))
            << e.name << " trial " << trial;
    }
    EXPECT_GT(rejected, 100);
    EXPECT_GT(accepted, 100);
}

TEST(PauliFrame, ResidualWeight) {
    EXPECT_EQ(residual_weight(0, 8, false, false), 0);
    EXPECT_EQ(residual_weight(6, 8, false, false), 2);
    EXPECT_EQ(residual_weight(1, 8, true, false), 1);
    EXPECT_EQ(residual_weight(0, 8, true, true), 1);
    EXPECT_EQ(residual_weight(3, 8, true, true), 3);
}

TEST(MonteCarlo, NoiselessRunAcceptsEverything) {
    MonteCarloResult r = monte_carlo(corpus()[2].circuit, corpus()[2].t, 0.0, 10000, 1);
    EXPECT_EQ(r.accepted, 10000u);
    EXPECT_DOUBLE_EQ(r.acceptance_rate, 1.0);
    EXPECT_DOUBLE_EQ(r.p_over_t, 0.0);
    EXPECT_THROW(monte_carlo(corpus()[2].circuit, 1, 1.0, 10, 1), std::invalid_argument);
    EXPECT_THROW(monte_carlo(corpus()[2].circuit, 1, 0.1, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, DeterministicAcrossJobs) {
    const Circuit &c = corpus()[8].circuit;
    MonteCarloOptions one, four;
    four.jobs = 4;
    MonteCarloResult a = monte_carlo(c, 2, 0.05, 300000, 17, one);
    MonteCarloResult b = monte_carlo(c, 2, 0.05, 300000, 17, four);
    MonteCarloResult d = monte_carlo(c, 2, 0.05, 300000, 18, one);
    EXPECT_EQ(a.accepted, b.accepted);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_NE(a.accepted, d.accepted);
    EXPECT_EQ(a.shots, 300000u);
}

TEST(MonteCarlo, AcceptanceMatchesFirstOrderTableauSum) {
    // Each location's detection probability is computed by injecting its faults into
    // the tableau; the product over locations predicts acceptance up to O(p^2).
    for (size_t idx : {size_t{1}, size_t{9}}) {
        const Circuit &c = corpus()[idx].circuit;
        const double p = 1e-3;
        double predicted = 1;
        for (size_t i = 0; i < c.ops.size(); i++) {
            const Op &op = c.ops[i];
            if (op.kind == OpKind::Cnot) {
                int detected = 0;
                for (int code = 1; code < 16; code++) {
                    std::vector<InjectedPauli> f;
                    int pa = code & 3, pb = code >> 2;
                    if (pa) {
                        f.push_back({i, op.a, static_cast<PauliKind>(pa)});
                    }
                    if (pb) {
                        f.push_back({i, op.b, static_cast<PauliKind>(pb)});
                    }
                    detected += run_tableau(c, f).rejected;
                }
                predicted *= 1 - p / 15 * detected;
            } else {
                bool prep = op.kind == OpKind::PrepZ || op.kind == OpKind::PrepX;
                if (!prep && i == 0) {
                    continue;
                }
                PauliKind kind = (op.kind == OpKind::PrepZ || op.kind == OpKind::MeasZ) ? PauliKind::X : PauliKind::Z;
                std::vector<InjectedPauli> f{{prep ? i : i - 1, op.a, kind}};
                if (run_tableau(c, f).rejected) {
                    predicted *= 1 - 2 * p / 3;
                }
            }
        }
        MonteCarloResult r = monte_carlo(c, corpus()[idx].t, p, 2000000, 5);
        double sigma = std::sqrt(predicted * (1 - predicted) / 2e6);
        double second_order = std::pow(1 - predicted, 2);
        EXPECT_NEAR(r.acceptance_rate, predicted, 6 * sigma + second_order) << corpus()[idx].name;
        EXPECT_LT(predicted, 0.999);
    }
}

TEST(MonteCarlo, WilsonInterval) {
    Interval a = wilson95(50, 100);
    EXPECT_NEAR(a.lo, 0.40383, 1e-4);
    EXPECT_NEAR(a.hi, 0.59617, 1e-4);
    Interval z = wilson95(0, 1000);
    EXPECT_NEAR(z.lo, 0.0, 1e-15);
    EXPECT_NEAR(z.hi, 0.003826, 1e-5);
    Interval one = wilson95(10, 10);
    EXPECT_NEAR(one.hi, 1.0, 1e-12);
    EXPECT_NEAR(one.lo, 0.72246, 1e-4);
}
