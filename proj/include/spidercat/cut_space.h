#ifndef SPIDERCAT_CUT_SPACE_H
#define SPIDERCAT_CUT_SPACE_H

#include <cstdint>
#include <utility>
#include <vector>

#include "spidercat/xor_search.h"

namespace spidercat {

/// Cycle-space coordinates of a connected multigraph relative to a BFS spanning
/// tree rooted at vertex 0. An edge set is a cut (a coboundary) exactly when the
/// XOR of its cycle bits vanishes; the XOR of its side bits then lists the selected
/// vertices lying on the side away from the root.
class CutSpace {
   public:
    CutSpace(size_t vertex_count, const std::vector<std::pair<uint32_t, uint32_t>> &edges);

    size_t cycle_count() const {
        return cycle_count_;
    }

    /// One row per edge. Bits [0, cycle_count) hold cycle membership; vertex v with
    /// side_bit[v] >= 0 sets bit cycle_count + side_bit[v] on every tree edge whose
    /// lower end has v in its subtree. `extra_bits` reserves zeroed room after that.
    XorTable table(const std::vector<int> &side_bit, size_t side_bits, size_t extra_bits = 0) const;

    /// 1 for vertices separated from the root by the given cut.
    std::vector<char> far_side(const std::vector<uint32_t> &cut_edges) const;

    bool is_cut(const std::vector<uint32_t> &edge_ids) const;

   private:
    size_t vertex_count_;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
    std::vector<int> parent_edge_;
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> order_;
    std::vector<int> depth_;
    std::vector<std::vector<uint32_t>> cycles_of_edge_;
    size_t cycle_count_ = 0;
};

}  // namespace spidercat

#endif
