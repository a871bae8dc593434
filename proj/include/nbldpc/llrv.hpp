#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nbldpc {

// One (penalty, GF index) pair of a truncated message. Penalty 0 marks the
// most reliable symbol; in quantized mode penalties hold integer levels.
struct LlrvEntry {
    double penalty;
    uint16_t index;
};

// Tie rule used everywhere: smaller penalty first, then smaller GF index.
inline bool entry_less(const LlrvEntry& a, const LlrvEntry& b) {
    if (a.penalty != b.penalty) return a.penalty < b.penalty;
    return a.index < b.index;
}

// Truncated sorted LLR vector. Invariants: entries sorted by (penalty, index),
// all indices distinct, first penalty 0.
struct Llrv {
    std::vector<LlrvEntry> entries;

    size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    double worst() const { return entries.back().penalty; }

    // Anchors the best penalty at 0.
    void normalize() {
        if (entries.empty()) return;
        const double base = entries.front().penalty;
        if (base == 0.0) return;
        for (auto& e : entries) e.penalty -= base;
    }
};

bool llrv_valid(const Llrv& v, unsigned q);

// Picks the n_m best candidates under the (penalty, index) order using
// repeated sweeps with at most `capacity` live slots, mirroring a hardware
// sorter of bounded length. Duplicate indices collapse to their best entry.
// Output is sorted and normalized; exact for any capacity >= 1.
Llrv select_best(const std::vector<LlrvEntry>& candidates, size_t n_m, size_t capacity);

} // namespace nbldpc
