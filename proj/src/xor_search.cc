#include "spidercat/xor_search.h"

namespace spidercat {

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (uint64_t i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) {
            return UINT64_MAX;
        }
    }
    return static_cast<uint64_t>(r);
}

uint64_t colex_rank(const std::vector<uint32_t> &sorted_items) {
    uint64_t rank = 0;
    for (size_t i = 0; i < sorted_items.size(); i++) {
        rank += binomial(sorted_items[i], i + 1);
    }
    return rank;
}

XorTable widen(const XorTable &table, size_t words) {
    if (words < table.words) {
        throw std::invalid_argument("widen: cannot shrink a table");
    }
    XorTable out;
    out.words = words;
    size_t n = table.items();
    out.data.assign(n * words, 0);
    for (size_t i = 0; i < n; i++) {
        std::copy(table.row(i), table.row(i) + table.words, out.row(i));
    }
    return out;
}

}  // namespace spidercat
