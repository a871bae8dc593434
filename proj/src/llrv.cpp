#include "nbldpc/llrv.hpp"

#include <algorithm>
#include <array>

namespace nbldpc {

bool llrv_valid(const Llrv& v, unsigned q) {
    if (v.entries.empty()) return false;
    if (v.entries.front().penalty != 0.0) return false;
    std::array<bool, 256> seen{};
    for (size_t i = 0; i < v.entries.size(); ++i) {
        const auto& e = v.entries[i];
        if (e.index >= q || e.penalty < 0.0) return false;
        if (seen[e.index]) return false;
        seen[e.index] = true;
        if (i > 0 && !entry_less(v.entries[i - 1], e)) return false;
    }
    return true;
}

namespace {

// Sorted insert keeping at most `cap` entries; exact duplicates are skipped.
void insert_bounded(std::vector<LlrvEntry>& live, const LlrvEntry& e, size_t cap) {
    auto it = std::lower_bound(live.begin(), live.end(), e, entry_less);
    if (it != live.end() && it->penalty == e.penalty && it->index == e.index) return;
    if (live.size() == cap) {
        if (it == live.end()) return;
        live.pop_back();
        it = std::lower_bound(live.begin(), live.end(), e, entry_less);
    }
    live.insert(it, e);
}

} // namespace

Llrv select_best(const std::vector<LlrvEntry>& candidates, size_t n_m, size_t capacity) {
    if (capacity == 0) capacity = 1;
    Llrv out;
    std::array<bool, 256> taken{};
    LlrvEntry last{0.0, 0};
    bool have_last = false;
    std::vector<LlrvEntry> live;
    live.reserve(capacity);

    while (out.entries.size() < n_m) {
        live.clear();
        for (const auto& e : candidates) {
            if (taken[e.index]) continue;
            if (have_last && !entry_less(last, e)) continue;
            insert_bounded(live, e, capacity);
        }
        if (live.empty()) break;
        for (const auto& e : live) {
            if (out.entries.size() >= n_m) break;
            if (!taken[e.index]) {
                out.entries.push_back(e);
                taken[e.index] = true;
            }
        }
        last = live.back();
        have_last = true;
    }
    out.normalize();
    return out;
}

} // namespace nbldpc
