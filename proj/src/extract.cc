#include "spidercat/extract.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace spidercat {

namespace {

class QubitPool {
   public:
    uint32_t take() {
        if (!free_.empty()) {
            uint32_t q = free_.top();
            free_.pop();
            return q;
        }
        return next_++;
    }
    void give_back(uint32_t q) {
        free_.push(q);
    }
    uint32_t size() const {
        return next_;
    }

   private:
    std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> free_;
    uint32_t next_ = 0;
};

}  // namespace

Circuit extract_circuit(const ZGraph &z, const SpiderTree &tree) {
    std::string problem = spider_tree_problem(z, tree);
    if (!problem.empty()) {
        throw std::invalid_argument("extract_circuit: " + problem);
    }
    for (const auto &[a, b] : z.edges) {
        if (a == b) {
            throw std::invalid_argument("extract_circuit: Z-graph has a self-loop");
        }
    }
    size_t k = z.spider_count();
    auto inc = z.incidence();
    auto children = tree.children();
    auto depth = tree.depths();

    std::vector<uint32_t> order(k);
    for (uint32_t s = 0; s < k; s++) {
        order[s] = s;
    }
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return depth[a] < depth[b]; });

    std::vector<char> tree_edge(z.edges.size(), 0);
    for (uint32_t s = 0; s < k; s++) {
        if (tree.parent_edge[s] >= 0) {
            tree_edge[tree.parent_edge[s]] = 1;
        }
    }

    Circuit c;
    QubitPool pool;
    std::vector<int64_t> line(k, -1);
    std::vector<int64_t> ancilla(z.edges.size(), -1);
    std::vector<int64_t> output_qubit(k, -1);

    for (uint32_t s : order) {
        if (s == tree.root) {
            line[s] = pool.take();
            c.prep_x(static_cast<uint32_t>(line[s]));
        }
        uint32_t q = static_cast<uint32_t>(line[s]);
        const auto &kids = children[s];
        int64_t line_child = -1;
        for (uint32_t ch : kids) {
            if (z.is_boundary(ch) && children[ch].empty()) {
                line_child = ch;
                break;
            }
        }
        if (line_child < 0 && !kids.empty()) {
            line_child = kids.front();
        }

        std::vector<uint32_t> legs = inc[s];
        std::sort(legs.begin(), legs.end());
        for (uint32_t e : legs) {
            if (static_cast<int32_t>(e) == tree.parent_edge[s]) {
                continue;
            }
            uint32_t other = z.other_end(e, s);
            if (tree_edge[e]) {
                if (static_cast<int64_t>(other) == line_child) {
                    line[other] = q;
                } else {
                    uint32_t fresh = pool.take();
                    c.prep_z(fresh);
                    c.cnot(q, fresh);
                    line[other] = fresh;
                }
            } else if (ancilla[e] < 0) {
                uint32_t a = pool.take();
                c.prep_z(a);
                c.cnot(q, a);
                ancilla[e] = a;
            } else {
                uint32_t a = static_cast<uint32_t>(ancilla[e]);
                c.cnot(q, a);
                c.meas_z(a);
                pool.give_back(a);
            }
        }
        if (z.is_boundary(s)) {
            if (kids.empty()) {
                output_qubit[s] = q;
            } else {
                uint32_t fresh = pool.take();
                c.prep_z(fresh);
                c.cnot(q, fresh);
                output_qubit[s] = fresh;
            }
        }
    }

    c.qubit_count = pool.size();
    for (uint32_t s : z.outputs) {
        c.outputs.push_back(static_cast<uint32_t>(output_qubit[s]));
    }
    c.validate();
    return c;
}

}  // namespace spidercat
