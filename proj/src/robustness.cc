#include "spidercat/robustness.h"

#include <algorithm>
#include <stdexcept>

#include "spidercat/cut_space.h"
#include "spidercat/xor_search.h"

namespace spidercat {

namespace {

Cut make_cut(const ZGraph &z, const CutSpace &space, const std::vector<uint32_t> &edges) {
    Cut cut;
    cut.cut_edges = edges;
    std::vector<char> far = space.far_side(edges);
    for (uint32_t s = 0; s < z.spider_count(); s++) {
        (far[s] ? cut.side_b : cut.side_a).push_back(s);
    }
    for (uint32_t o : z.outputs) {
        (far[o] ? cut.marks_b : cut.marks_a)++;
    }
    return cut;
}

}  // namespace

RobustnessReport is_t_robust(const ZGraph &z, int t, const RobustnessOptions &options) {
    if (t < 1) {
        throw std::invalid_argument("is_t_robust: t must be positive");
    }
    RobustnessReport report;
    report.t = t;
    if (!z.is_connected()) {
        report.verdict = RobustVerdict::Violated;
        report.counterexample = Cut{};
        return report;
    }
    CutSpace space(z.spider_count(), z.edges);
    std::vector<int> side_bit(z.spider_count(), -1);
    for (size_t i = 0; i < z.outputs.size(); i++) {
        side_bit[z.outputs[i]] = static_cast<int>(i);
    }
    size_t n = z.outputs.size();
    size_t cycles = space.cycle_count();
    XorTable table = space.table(side_bit, n);
    bool literal = options.condition == RobustCondition::Literal;
    XorSearchResult found = dispatch_words(table.words, [&]<size_t W>() {
        auto pred = [&](const uint64_t *acc, int weight, const uint32_t *) {
            if (any_in_range(acc, 0, cycles)) {
                return false;
            }
            size_t far = popcount_range(acc, cycles, cycles + n);
            size_t smaller = std::min(far, n - far);
            return static_cast<int>(smaller) > (literal ? t : weight);
        };
        return xor_search_exhaustive<W>(table, t, 1, pred, options.jobs);
    });
    report.cuts_enumerated = found.checked;
    if (found.hit) {
        report.verdict = RobustVerdict::Violated;
        report.fault_weights_checked = found.hit->weight - 1;
        report.counterexample = make_cut(z, space, found.hit->items);
    } else {
        report.fault_weights_checked = t;
    }
    return report;
}

RobustnessReport is_t_robust(const MarkedGraph &g, int t, const RobustnessOptions &options) {
    return is_t_robust(to_zgraph(g), t, options);
}

bool revalidate_violation(const ZGraph &z, const Cut &cut, int bound) {
    std::vector<int> side(z.spider_count(), -1);
    for (uint32_t s : cut.side_a) {
        if (s >= side.size() || side[s] != -1) {
            return false;
        }
        side[s] = 0;
    }
    for (uint32_t s : cut.side_b) {
        if (s >= side.size() || side[s] != -1) {
            return false;
        }
        side[s] = 1;
    }
    if (std::count(side.begin(), side.end(), -1) != 0 || cut.side_a.empty() || cut.side_b.empty()) {
        return false;
    }
    std::vector<int> in_cut(z.edges.size(), 0);
    for (uint32_t e : cut.cut_edges) {
        if (e >= in_cut.size()) {
            return false;
        }
        in_cut[e]++;
    }
    for (uint32_t e = 0; e < z.edges.size(); e++) {
        bool crosses = side[z.edges[e].first] != side[z.edges[e].second];
        if (crosses != (in_cut[e] == 1)) {
            return false;
        }
    }
    int marks_a = 0, marks_b = 0;
    for (uint32_t o : z.outputs) {
        (side[o] == 0 ? marks_a : marks_b)++;
    }
    if (marks_a != cut.marks_a || marks_b != cut.marks_b) {
        return false;
    }
    return std::min(marks_a, marks_b) > bound;
}

std::string to_string(RobustVerdict v) {
    return v == RobustVerdict::Robust ? "robust" : "violated";
}

}  // namespace spidercat
