#include "spidercat/constructions.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace spidercat {

namespace {

struct Block {
    uint32_t lo;
    uint32_t hi;
};

struct Merge {
    Block left;
    Block right;
};

// Fills merges_by_height[h] with the merges whose subtree height is h + 1.
int plan_merges(Block b, std::vector<std::vector<Merge>> &merges_by_height) {
    uint32_t size = b.hi - b.lo;
    if (size == 1) {
        return 0;
    }
    uint32_t mid = b.lo + size / 2;
    Block l{b.lo, mid};
    Block r{mid, b.hi};
    int h = std::max(plan_merges(l, merges_by_height), plan_merges(r, merges_by_height)) + 1;
    if (merges_by_height.size() < static_cast<size_t>(h)) {
        merges_by_height.resize(h);
    }
    merges_by_height[h - 1].push_back({l, r});
    return h;
}

std::vector<uint32_t> least_used(Block b, uint32_t count, const std::vector<uint32_t> &uses) {
    std::vector<uint32_t> qs(b.hi - b.lo);
    std::iota(qs.begin(), qs.end(), b.lo);
    std::stable_sort(qs.begin(), qs.end(), [&](uint32_t x, uint32_t y) { return uses[x] < uses[y]; });
    qs.resize(count);
    std::sort(qs.begin(), qs.end());
    return qs;
}

void check_recursive_args(uint32_t n, int t) {
    if (t < 1) {
        throw std::invalid_argument("recursive_cat: t must be positive");
    }
    if (n < static_cast<uint32_t>(t) + 1) {
        throw std::invalid_argument("recursive_cat: n must be at least t + 1");
    }
}

}  // namespace

Circuit recursive_cat(uint32_t n, int t, bool compressed) {
    check_recursive_args(n, t);
    uint32_t w = static_cast<uint32_t>(t) + 1;
    std::vector<std::vector<Merge>> layers;
    plan_merges({0, n}, layers);

    Circuit c;
    c.qubit_count = n;
    for (uint32_t q = 0; q < n; q++) {
        c.prep_x(q);
        c.outputs.push_back(q);
    }
    std::vector<uint32_t> uses(n, 0);
    std::vector<uint32_t> free_ancillas;
    std::vector<uint32_t> held_back;
    for (const auto &layer : layers) {
        std::vector<std::pair<uint32_t, uint32_t>> pairs;
        for (const Merge &m : layer) {
            uint32_t k = std::min({w, m.left.hi - m.left.lo, m.right.hi - m.right.lo});
            auto a = least_used(m.left, k, uses);
            auto b = least_used(m.right, k, uses);
            for (uint32_t i = 0; i < k; i++) {
                pairs.emplace_back(a[i], b[i]);
            }
        }
        std::vector<uint32_t> anc;
        for (size_t i = 0; i < pairs.size(); i++) {
            uint32_t q;
            if (!free_ancillas.empty()) {
                q = free_ancillas.front();
                free_ancillas.erase(free_ancillas.begin());
            } else {
                q = c.qubit_count++;
            }
            anc.push_back(q);
            c.prep_z(q);
        }
        for (size_t i = 0; i < pairs.size(); i++) {
            c.cnot(pairs[i].first, anc[i]);
            uses[pairs[i].first]++;
        }
        for (size_t i = 0; i < pairs.size(); i++) {
            c.cnot(pairs[i].second, anc[i]);
            uses[pairs[i].second]++;
        }
        for (uint32_t q : anc) {
            c.meas_z(q);
        }
        if (compressed) {
            free_ancillas.insert(free_ancillas.end(), held_back.begin(), held_back.end());
            held_back = anc;
        } else {
            free_ancillas.insert(free_ancillas.end(), anc.begin(), anc.end());
        }
        std::sort(free_ancillas.begin(), free_ancillas.end());
    }
    return c;
}

uint64_t recursive_zz_count(uint32_t n, int t) {
    check_recursive_args(n, t);
    std::vector<std::vector<Merge>> layers;
    plan_merges({0, n}, layers);
    uint64_t total = 0;
    for (const auto &layer : layers) {
        for (const Merge &m : layer) {
            total += std::min({static_cast<uint32_t>(t) + 1, m.left.hi - m.left.lo, m.right.hi - m.right.lo});
        }
    }
    return total;
}

std::vector<uint32_t> greedy_spider_matching(const ZGraph &z) {
    std::vector<char> used(z.spider_count(), 0);
    std::vector<uint32_t> matched;
    for (uint32_t e = 0; e < z.edges.size(); e++) {
        auto [a, b] = z.edges[e];
        if (a != b && !used[a] && !used[b]) {
            used[a] = used[b] = 1;
            matched.push_back(e);
        }
    }
    return matched;
}

Circuit shallow_cat(const ZGraph &z) {
    size_t k = z.spider_count();
    auto inc = z.incidence();
    std::vector<uint32_t> matching = greedy_spider_matching(z);
    std::vector<char> is_matched(z.edges.size(), 0);
    std::vector<int64_t> group(k, -1);
    std::vector<std::vector<uint32_t>> members;
    for (uint32_t e : matching) {
        is_matched[e] = 1;
        group[z.edges[e].first] = group[z.edges[e].second] = static_cast<int64_t>(members.size());
        members.push_back({z.edges[e].first, z.edges[e].second});
    }
    for (uint32_t s = 0; s < k; s++) {
        if (group[s] < 0) {
            group[s] = static_cast<int64_t>(members.size());
            members.push_back({s});
        }
    }
    std::sort(members.begin(), members.end(),
              [](const auto &x, const auto &y) { return *std::min_element(x.begin(), x.end()) <
                                                        *std::min_element(y.begin(), y.end()); });

    Circuit c;
    // Leg qubits of each z-edge end: first endpoint, second endpoint.
    std::vector<std::pair<int64_t, int64_t>> edge_leg(z.edges.size(), {-1, -1});
    std::vector<int64_t> output_leg(k, -1);
    // One side per spider; a matched pair is bridged by a CNOT between its two roots.
    std::vector<std::vector<std::vector<uint32_t>>> cats;
    for (const auto &grp : members) {
        std::vector<std::vector<uint32_t>> sides;
        for (uint32_t s : grp) {
            std::vector<uint32_t> legs;
            std::vector<uint32_t> edges = inc[s];
            std::sort(edges.begin(), edges.end());
            bool second_visit_of_loop = false;
            for (uint32_t e : edges) {
                if (is_matched[e]) {
                    continue;
                }
                uint32_t q = c.qubit_count++;
                legs.push_back(q);
                bool first_end = z.edges[e].first == s && !second_visit_of_loop;
                if (z.edges[e].first == z.edges[e].second) {
                    second_visit_of_loop = !second_visit_of_loop;
                }
                (first_end ? edge_leg[e].first : edge_leg[e].second) = q;
            }
            if (z.is_boundary(s)) {
                uint32_t q = c.qubit_count++;
                legs.push_back(q);
                output_leg[s] = q;
            }
            sides.push_back(std::move(legs));
        }
        cats.push_back(std::move(sides));
    }
    for (const auto &sides : cats) {
        for (size_t side = 0; side < sides.size(); side++) {
            for (size_t i = 0; i < sides[side].size(); i++) {
                if (side == 0 && i == 0) {
                    c.prep_x(sides[side][i]);
                } else {
                    c.prep_z(sides[side][i]);
                }
            }
        }
    }
    for (const auto &sides : cats) {
        if (sides.size() == 2) {
            c.cnot(sides[0][0], sides[1][0]);
        }
    }
    // Fan-out doubling inside each side: in round r every holder feeds one new leg.
    size_t largest = 0;
    for (const auto &sides : cats) {
        for (const auto &legs : sides) {
            largest = std::max(largest, legs.size());
        }
    }
    for (size_t have = 1; have < largest; have *= 2) {
        for (const auto &sides : cats) {
            for (const auto &legs : sides) {
                for (size_t i = 0; i < have && have + i < legs.size(); i++) {
                    c.cnot(legs[i], legs[have + i]);
                }
            }
        }
    }
    for (uint32_t e = 0; e < z.edges.size(); e++) {
        if (is_matched[e]) {
            continue;
        }
        uint32_t a = static_cast<uint32_t>(edge_leg[e].first);
        uint32_t b = static_cast<uint32_t>(edge_leg[e].second);
        c.cnot(a, b);
        c.meas_x(a);
        c.meas_z(b);
    }
    for (uint32_t s : z.outputs) {
        c.outputs.push_back(static_cast<uint32_t>(output_leg[s]));
    }
    c.validate();
    return c;
}

Circuit shallow_cat(const MarkedGraph &g) {
    return shallow_cat(to_zgraph(g));
}

Circuit fanout_ladder(uint32_t n) {
    if (n < 2) {
        throw std::invalid_argument("fanout_ladder: n must be at least 2");
    }
    Circuit c;
    c.qubit_count = n;
    c.prep_x(0);
    for (uint32_t q = 1; q < n; q++) {
        c.prep_z(q);
    }
    for (uint32_t q = 0; q + 1 < n; q++) {
        c.cnot(q, q + 1);
    }
    for (uint32_t q = 0; q < n; q++) {
        c.outputs.push_back(q);
    }
    c.validate();
    return c;
}

}  // namespace spidercat
