#include "spidercat/nonlocal_cut.h"

#include <numeric>
#include <stdexcept>

#include "spidercat/cut_space.h"

namespace spidercat {

namespace {

struct DisjointSets {
    std::vector<uint32_t> parent;
    explicit DisjointSets(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent[b] = a;
        return true;
    }
};

// side[v] in {0,1}; returns whether each side's induced subgraph has a cycle.
std::pair<bool, bool> sides_have_cycles(const MarkedGraph &g, const std::vector<char> &side) {
    DisjointSets sets(g.vertex_count());
    bool cyc[2] = {false, false};
    for (const Edge &e : g.edges()) {
        if (side[e.u] != side[e.v]) {
            continue;
        }
        if (!sets.unite(e.u, e.v)) {
            cyc[static_cast<int>(side[e.u])] = true;
        }
    }
    return {cyc[0], cyc[1]};
}

Cut cut_from_sides(const MarkedGraph &g, const std::vector<char> &side) {
    Cut cut;
    for (uint32_t e = 0; e < g.edge_count(); e++) {
        if (side[g.edge(e).u] != side[g.edge(e).v]) {
            cut.cut_edges.push_back(e);
        }
    }
    bool flip = side[0] != 0;
    for (uint32_t v = 0; v < g.vertex_count(); v++) {
        ((side[v] != 0) != flip ? cut.side_b : cut.side_a).push_back(v);
    }
    return cut;
}

}  // namespace

bool is_nonlocal(const MarkedGraph &g, const Cut &cut) {
    std::vector<char> side(g.vertex_count(), 0);
    for (uint32_t v : cut.side_b) {
        side[v] = 1;
    }
    auto [a, b] = sides_have_cycles(g, side);
    return a && b;
}

std::optional<Cut> has_nonlocal_cut_bruteforce(const MarkedGraph &g, int t, int jobs) {
    if (!g.is_connected()) {
        throw std::invalid_argument("has_nonlocal_cut_bruteforce: graph must be connected");
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (const Edge &e : g.edges()) {
        edges.emplace_back(e.u, e.v);
    }
    CutSpace space(g.vertex_count(), edges);
    size_t n = g.vertex_count();
    std::vector<int> side_bit(n);
    std::iota(side_bit.begin(), side_bit.end(), 0);
    XorTable table = space.table(side_bit, n);
    size_t cycles = space.cycle_count();
    XorSearchResult found = dispatch_words(table.words, [&]<size_t W>() {
        auto pred = [&](const uint64_t *acc, int, const uint32_t *) {
            if (any_in_range(acc, 0, cycles)) {
                return false;
            }
            std::vector<char> side(n);
            for (size_t v = 0; v < n; v++) {
                size_t bit = cycles + v;
                side[v] = static_cast<char>((acc[bit >> 6] >> (bit & 63)) & 1);
            }
            auto [a, b] = sides_have_cycles(g, side);
            return a && b;
        };
        return xor_search_exhaustive<W>(table, t, 1, pred, jobs);
    });
    if (!found.hit) {
        return std::nullopt;
    }
    return cut_from_sides(g, space.far_side(found.hit->items));
}

NonlocalCutEncoding nonlocal_cut_encoding(const MarkedGraph &g, int t) {
    if (!g.is_simple()) {
        throw std::invalid_argument("nonlocal_cut_cnf: graph must be simple");
    }
    NonlocalCutEncoding enc;
    CnfFormula &f = enc.cnf;
    size_t n = g.vertex_count();
    for (size_t u = 0; u < n; u++) {
        enc.x.push_back(f.new_var("x_" + std::to_string(u)));
    }
    for (size_t u = 0; u < n; u++) {
        enc.a.push_back(f.new_var("a_" + std::to_string(u)));
    }
    for (size_t u = 0; u < n; u++) {
        enc.b.push_back(f.new_var("b_" + std::to_string(u)));
    }
    for (const Edge &e : g.edges()) {
        enc.d.push_back(f.new_var("d_" + std::to_string(e.u) + "_" + std::to_string(e.v)));
    }
    for (size_t i = 0; i < g.edge_count(); i++) {
        int xu = enc.x[g.edge(i).u], xv = enc.x[g.edge(i).v];
        f.add({-xu, xv, enc.d[i]});
        f.add({xu, -xv, enc.d[i]});
    }
    add_at_most(f, enc.d, t);
    for (int pass = 0; pass < 2; pass++) {
        const std::vector<int> &w = pass == 0 ? enc.a : enc.b;
        f.add(w);
        for (size_t u = 0; u < n; u++) {
            f.add({-w[u], pass == 0 ? enc.x[u] : -enc.x[u]});
            const auto &inc = g.incident(static_cast<uint32_t>(u));
            int nb[3];
            for (int k = 0; k < 3; k++) {
                nb[k] = w[g.other_end(inc[k], static_cast<uint32_t>(u))];
            }
            f.add({-w[u], nb[0], nb[1]});
            f.add({-w[u], nb[0], nb[2]});
            f.add({-w[u], nb[1], nb[2]});
        }
    }
    if (n > 0) {
        f.add({enc.x[0]});
    }
    return enc;
}

CnfFormula nonlocal_cut_cnf(const MarkedGraph &g, int t) {
    return nonlocal_cut_encoding(g, t).cnf;
}

Cut decode_nonlocal_cut(const MarkedGraph &g, const NonlocalCutEncoding &enc, const std::vector<bool> &model) {
    std::vector<char> side(g.vertex_count());
    for (size_t u = 0; u < g.vertex_count(); u++) {
        side[u] = model[enc.x[u]] ? 0 : 1;
    }
    return cut_from_sides(g, side);
}

std::optional<Cut> find_nonlocal_cut(const MarkedGraph &g, int t, const SolverBackend &backend) {
    NonlocalCutEncoding enc = nonlocal_cut_encoding(g, t);
    SolveResult r = solve_cnf(enc.cnf, backend);
    if (r.status == SolveStatus::Timeout) {
        throw SolverError("nonlocal cut search timed out");
    }
    if (r.status == SolveStatus::Unsat) {
        return std::nullopt;
    }
    return decode_nonlocal_cut(g, enc, r.model);
}

}  // namespace spidercat
