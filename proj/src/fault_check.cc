#include "spidercat/fault_check.h"

#include <algorithm>

#include "spidercat/xor_search.h"

namespace spidercat {

std::vector<FaultSite> fault_sites(const Circuit &c) {
    std::vector<FaultSite> sites;
    std::vector<int64_t> last(c.qubit_count, -1);
    std::vector<int> events(c.qubit_count, 0);
    auto touch = [&](uint32_t q, size_t i) {
        if (last[q] >= 0) {
            sites.push_back({q, static_cast<size_t>(last[q])});
        }
        last[q] = static_cast<int64_t>(i);
        events[q]++;
    };
    for (size_t i = 0; i < c.ops.size(); i++) {
        const Op &op = c.ops[i];
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
                last[op.a] = static_cast<int64_t>(i);
                events[op.a] = 1;
                break;
            case OpKind::Cnot:
                touch(op.a, i);
                touch(op.b, i);
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
                touch(op.a, i);
                last[op.a] = -1;
                break;
        }
    }
    for (uint32_t q = 0; q < c.qubit_count; q++) {
        if (last[q] >= 0 && events[q] == 1) {
            sites.push_back({q, static_cast<size_t>(last[q])});
        }
    }
    std::sort(sites.begin(), sites.end(), [](const FaultSite &a, const FaultSite &b) {
        return a.after_op != b.after_op ? a.after_op < b.after_op : a.qubit < b.qubit;
    });
    return sites;
}

const char *to_string(FtVerdict v) {
    return v == FtVerdict::Ft ? "ft" : "violated";
}

const char *to_string(FaultModel m) {
    return m == FaultModel::XOnly ? "x" : "full";
}

namespace {

struct FaultItem {
    FaultSite site;
    PauliKind pauli;
};

std::vector<FaultItem> fault_items(const std::vector<FaultSite> &sites, FaultModel model) {
    std::vector<FaultItem> items;
    for (const FaultSite &s : sites) {
        items.push_back({s, PauliKind::X});
        if (model == FaultModel::FullPauli) {
            items.push_back({s, PauliKind::Z});
            items.push_back({s, PauliKind::Y});
        }
    }
    return items;
}

// Effect columns: detectors, then output X bits, then (full model) output Z parity.
XorTable effect_table(const FrameSimulator &sim, const std::vector<FaultItem> &items, bool with_z) {
    const Circuit &c = sim.circuit();
    size_t d = sim.detector_count();
    size_t n = c.outputs.size();
    XorTable table(items.size(), d + n + (with_z ? 1 : 0));
    auto none = [](size_t, FrameLanes &) {};
    for (size_t base = 0; base < items.size(); base += 64) {
        size_t count = std::min<size_t>(64, items.size() - base);
        auto inject = [&](size_t i, FrameLanes &f) {
            for (size_t j = 0; j < count; j++) {
                const FaultItem &it = items[base + j];
                if (it.site.after_op == i) {
                    uint8_t k = static_cast<uint8_t>(it.pauli);
                    f.x[it.site.qubit] ^= static_cast<uint64_t>(k & 1) << j;
                    f.z[it.site.qubit] ^= static_cast<uint64_t>((k >> 1) & 1) << j;
                }
            }
        };
        FrameLanes lanes = sim.run(none, inject);
        for (size_t j = 0; j < count; j++) {
            for (size_t k = 0; k < d; k++) {
                if ((lanes.detector_flips[k] >> j) & 1) {
                    table.set(base + j, k);
                }
            }
            bool parity = false;
            for (size_t o = 0; o < n; o++) {
                if ((lanes.x[c.outputs[o]] >> j) & 1) {
                    table.set(base + j, d + o);
                }
                parity ^= ((lanes.z[c.outputs[o]] >> j) & 1) != 0;
            }
            if (with_z && parity) {
                table.set(base + j, d + n);
            }
        }
    }
    return table;
}

}  // namespace

FaultReport check_ft(const Circuit &c, int t, const FaultCheckOptions &options) {
    FrameSimulator sim(c);
    std::vector<FaultSite> sites = fault_sites(c);
    bool with_z = options.model == FaultModel::FullPauli;
    std::vector<FaultItem> items = fault_items(sites, options.model);
    XorTable table = effect_table(sim, items, with_z);
    size_t d = sim.detector_count();
    size_t n = c.outputs.size();

    FaultReport report;
    report.t = t;
    report.locations = sites.size();

    auto residual = [d, n, with_z](const uint64_t *acc) {
        size_t w = popcount_range(acc, d, d + n);
        bool parity = with_z && popcount_range(acc, d + n, d + n + 1) != 0;
        return residual_weight(w, n, parity, with_z);
    };
    auto violates = [&](const uint64_t *acc, int weight, const uint32_t *) {
        if (any_in_range(acc, 0, d)) {
            return false;
        }
        return residual(acc) > weight;
    };

    for (int f = 1; f <= t; f++) {
        if (static_cast<size_t>(f) > items.size()) {
            break;
        }
        XorSearchResult r;
        if (binomial(items.size(), f) <= options.exhaustive_budget) {
            r = dispatch_words(table.words, [&]<size_t W>() {
                return xor_search_exhaustive<W>(table.words == W ? table : widen(table, W), f, f, violates,
                                                options.jobs);
            });
        } else {
            report.exhaustive = false;
            report.sampled_weights.push_back(f);
            r = dispatch_words(table.words, [&]<size_t W>() {
                return xor_search_sampled<W>(table.words == W ? table : widen(table, W), f, options.samples,
                                             Rng::derive(options.seed, static_cast<uint64_t>(f)), violates);
            });
        }
        report.combos_checked += r.checked;
        if (r.hit) {
            report.verdict = FtVerdict::Violated;
            FaultCounterexample ce;
            std::vector<uint64_t> acc(table.words, 0);
            for (uint32_t i : r.hit->items) {
                ce.sites.push_back(items[i].site);
                ce.paulis.push_back(items[i].pauli);
                for (size_t w = 0; w < table.words; w++) {
                    acc[w] ^= table.row(i)[w];
                }
            }
            ce.residual_output_weight = residual(acc.data());
            report.counterexample = std::move(ce);
            return report;
        }
    }
    return report;
}

bool revalidate_counterexample(const Circuit &c, const FaultCounterexample &ce, FaultModel model) {
    if (ce.sites.size() != ce.paulis.size() || ce.sites.empty()) {
        return false;
    }
    FrameSimulator sim(c);
    std::vector<InjectedPauli> faults;
    for (size_t i = 0; i < ce.sites.size(); i++) {
        faults.push_back({ce.sites[i].after_op, ce.sites[i].qubit, ce.paulis[i]});
    }
    FaultPropagation p = propagate_faults(sim, faults, model == FaultModel::FullPauli);
    return !p.detected && p.residual_weight == ce.residual_output_weight &&
           p.residual_weight > static_cast<int>(ce.sites.size());
}

}  // namespace spidercat
