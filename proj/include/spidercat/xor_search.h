#ifndef SPIDERCAT_XOR_SEARCH_H
#define SPIDERCAT_XOR_SEARCH_H

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spidercat/rng.h"

namespace spidercat {

/// Saturating binomial coefficient.
uint64_t binomial(uint64_t n, uint64_t k);

/// Position of a sorted subset in colexicographic order among subsets of equal size.
uint64_t colex_rank(const std::vector<uint32_t> &sorted_items);

/// A family of GF(2) vectors ("effects"), one per item. Searching a combination of
/// items means XOR-ing their effects and testing the accumulated vector.
struct XorTable {
    size_t words = 1;
    std::vector<uint64_t> data;  // item-major, `words` words per item

    XorTable() = default;
    XorTable(size_t item_count, size_t bit_count)
        : words(std::max<size_t>(1, (bit_count + 63) / 64)), data(item_count * words, 0) {
    }

    size_t items() const {
        return words == 0 ? 0 : data.size() / words;
    }
    uint64_t *row(size_t item) {
        return data.data() + item * words;
    }
    const uint64_t *row(size_t item) const {
        return data.data() + item * words;
    }
    void set(size_t item, size_t bit) {
        row(item)[bit >> 6] |= uint64_t{1} << (bit & 63);
    }
    void flip(size_t item, size_t bit) {
        row(item)[bit >> 6] ^= uint64_t{1} << (bit & 63);
    }
    bool get(size_t item, size_t bit) const {
        return (row(item)[bit >> 6] >> (bit & 63)) & 1;
    }
};

struct XorHit {
    int weight = 0;
    std::vector<uint32_t> items;  // sorted ascending
};

struct XorSearchResult {
    std::optional<XorHit> hit;
    uint64_t checked = 0;  // combinations examined, counted in the global deterministic order
    bool exhaustive = true;
};

namespace detail {

template <size_t W, typename Pred>
struct ColexBlockSearch {
    const XorTable &table;
    const Pred &pred;
    int weight;
    std::array<uint32_t, 64> chosen{};
    bool found = false;

    // Enumerates `remaining` further items below `upper`, largest first, ascending at
    // every level. Together with an ascending outer loop over the largest item this
    // visits subsets in colexicographic order.
    void run(int remaining, uint32_t upper, const std::array<uint64_t, W> &acc) {
        if (remaining == 0) {
            if (pred(acc.data(), weight, chosen.data())) {
                found = true;
            }
            return;
        }
        for (uint32_t i = static_cast<uint32_t>(remaining - 1); i < upper && !found; i++) {
            std::array<uint64_t, W> next = acc;
            const uint64_t *r = table.row(i);
            for (size_t w = 0; w < W; w++) {
                next[w] ^= r[w];
            }
            chosen[remaining - 1] = i;
            run(remaining - 1, i, next);
        }
    }
};

}  // namespace detail

/// Finds the first combination (weights 1..max_weight, colexicographic within each
/// weight) whose accumulated effect satisfies `pred`. Work is split by the largest
/// item across `jobs` threads; the reported hit is the minimum in the global order
/// regardless of the thread count.
///
/// `pred(const uint64_t *acc, int weight, const uint32_t *items)` must be thread safe.
template <size_t W, typename Pred>
XorSearchResult xor_search_exhaustive(const XorTable &table, int max_weight, int min_weight, const Pred &pred,
                                      int jobs) {
    if (table.words != W) {
        throw std::logic_error("xor_search_exhaustive: word count mismatch");
    }
    if (max_weight > 64) {
        throw std::invalid_argument("xor_search_exhaustive: weight above 64 unsupported");
    }
    XorSearchResult result;
    uint32_t n = static_cast<uint32_t>(table.items());
    jobs = std::max(1, jobs);
    for (int f = std::max(1, min_weight); f <= max_weight; f++) {
        if (static_cast<uint32_t>(f) > n) {
            break;
        }
        std::atomic<uint32_t> next_top{static_cast<uint32_t>(f - 1)};
        std::atomic<uint32_t> best_top{UINT32_MAX};
        std::mutex mu;
        std::optional<XorHit> best;
        auto worker = [&]() {
            while (true) {
                uint32_t top = next_top.fetch_add(1);
                if (top >= n || top > best_top.load()) {
                    return;
                }
                detail::ColexBlockSearch<W, Pred> block{table, pred, f};
                std::array<uint64_t, W> acc{};
                const uint64_t *r = table.row(top);
                for (size_t w = 0; w < W; w++) {
                    acc[w] = r[w];
                }
                block.chosen[f - 1] = top;
                block.run(f - 1, top, acc);
                if (block.found) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (top < best_top.load()) {
                        best_top.store(top);
                        XorHit h;
                        h.weight = f;
                        h.items.assign(block.chosen.begin(), block.chosen.begin() + f);
                        best = std::move(h);
                    }
                    return;
                }
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> threads;
            for (int j = 0; j < jobs; j++) {
                threads.emplace_back(worker);
            }
            for (auto &t : threads) {
                t.join();
            }
        }
        if (best) {
            result.checked += colex_rank(best->items) + 1;
            result.hit = std::move(best);
            return result;
        }
        result.checked += binomial(n, f);
    }
    return result;
}

/// Uniformly samples `samples` combinations of exactly `weight` distinct items.
template <size_t W, typename Pred>
XorSearchResult xor_search_sampled(const XorTable &table, int weight, uint64_t samples, uint64_t seed,
                                   const Pred &pred) {
    XorSearchResult result;
    result.exhaustive = false;
    uint32_t n = static_cast<uint32_t>(table.items());
    if (static_cast<uint32_t>(weight) > n || weight <= 0) {
        return result;
    }
    Rng rng(seed);
    std::vector<uint32_t> pick;
    for (uint64_t s = 0; s < samples; s++) {
        // Floyd's algorithm for a uniform subset.
        pick.clear();
        for (uint32_t j = n - weight; j < n; j++) {
            uint32_t r = static_cast<uint32_t>(rng.below(j + 1));
            if (std::find(pick.begin(), pick.end(), r) != pick.end()) {
                pick.push_back(j);
            } else {
                pick.push_back(r);
            }
        }
        std::sort(pick.begin(), pick.end());
        std::array<uint64_t, W> acc{};
        for (uint32_t i : pick) {
            const uint64_t *r = table.row(i);
            for (size_t w = 0; w < W; w++) {
                acc[w] ^= r[w];
            }
        }
        result.checked++;
        if (pred(acc.data(), weight, pick.data())) {
            result.hit = XorHit{weight, pick};
            return result;
        }
    }
    return result;
}

/// Calls `fn.template operator()<W>()` with the compile-time word count W matching
/// `words`.
template <typename Fn>
decltype(auto) dispatch_words(size_t words, Fn &&fn) {
    switch (words) {
        case 1:
            return fn.template operator()<1>();
        case 2:
            return fn.template operator()<2>();
        case 3:
            return fn.template operator()<3>();
        case 4:
            return fn.template operator()<4>();
        case 5:
        case 6:
            return fn.template operator()<6>();
        case 7:
        case 8:
            return fn.template operator()<8>();
        default:
            if (words <= 12) {
                return fn.template operator()<12>();
            }
            if (words <= 16) {
                return fn.template operator()<16>();
            }
            throw std::invalid_argument("dispatch_words: effect vectors wider than 1024 bits are unsupported");
    }
}

/// Copies `table` into a table of exactly `words` words per item (zero padded).
XorTable widen(const XorTable &table, size_t words);

inline size_t popcount_range(const uint64_t *acc, size_t begin, size_t end) {
    size_t total = 0;
    for (size_t b = begin; b < end;) {
        size_t word = b >> 6;
        size_t offset = b & 63;
        size_t take = std::min<size_t>(64 - offset, end - b);
        uint64_t mask = take == 64 ? ~uint64_t{0} : ((uint64_t{1} << take) - 1);
        total += static_cast<size_t>(__builtin_popcountll((acc[word] >> offset) & mask));
        b += take;
    }
    return total;
}

inline bool any_in_range(const uint64_t *acc, size_t begin, size_t end) {
    return popcount_range(acc, begin, end) != 0;
}

}  // namespace spidercat

#endif
