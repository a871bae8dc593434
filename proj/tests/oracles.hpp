// Independent reference implementations used only by tests. Nothing here may
// call the production search/combine paths it is checking.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "nbldpc/decoder.hpp"
#include "nbldpc/gf.hpp"
#include "nbldpc/llrv.hpp"
#include "nbldpc/rng.hpp"

namespace oracle {

using nbldpc::Algorithm;
using nbldpc::DecoderConfig;
using nbldpc::FieldSpec;
using nbldpc::Llrv;
using nbldpc::LlrvEntry;

// Carry-less polynomial multiply reduced mod poly; no tables involved.
inline unsigned gf_mul_poly(unsigned a, unsigned b, unsigned poly, unsigned p) {
    unsigned r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (1u << p)) a ^= poly;
    }
    return r;
}

inline double pair_score(double pa, double pb, const DecoderConfig& cfg) {
    if (cfg.algorithm == Algorithm::MinMax) return std::max(pa, pb);
    const double s = pa + pb;
    const double sat = cfg.sat_limit();
    return s > sat ? sat : s;
}

// Full n_m x n_m combine: every stored-entry pair, minimum score per gamma,
// n_m best under the (score, gamma) order, normalized.
inline Llrv ecn_exhaustive(const Llrv& a, const Llrv& b, const DecoderConfig& cfg,
                           const FieldSpec& f) {
    std::map<uint16_t, double> best;
    for (const auto& ea : a.entries) {
        for (const auto& eb : b.entries) {
            const uint16_t g = FieldSpec::add(ea.index, eb.index);
            const double s = pair_score(ea.penalty, eb.penalty, cfg);
            auto it = best.find(g);
            if (it == best.end() || s < it->second) best[g] = s;
        }
    }
    std::vector<LlrvEntry> all;
    for (const auto& [g, s] : best) all.push_back({s, g});
    std::sort(all.begin(), all.end(), nbldpc::entry_less);
    if (all.size() > cfg.n_m) all.resize(cfg.n_m);
    Llrv out;
    out.entries = std::move(all);
    out.normalize();
    return out;
}

// Brute-force extrinsic check-node output: enumerate every tuple of stored
// entries over all inputs except `skip`.
inline Llrv cn_exhaustive(const std::vector<Llrv>& in, size_t skip, const DecoderConfig& cfg,
                          const FieldSpec& f) {
    std::vector<const Llrv*> msgs;
    for (size_t k = 0; k < in.size(); ++k)
        if (k != skip) msgs.push_back(&in[k]);

    std::map<uint16_t, double> best;
    std::vector<size_t> idx(msgs.size(), 0);
    for (;;) {
        uint16_t g = 0;
        double s = 0.0;
        bool first = true;
        for (size_t k = 0; k < msgs.size(); ++k) {
            const auto& e = msgs[k]->entries[idx[k]];
            g = FieldSpec::add(g, e.index);
            if (first) {
                s = e.penalty;
                first = false;
            } else {
                s = pair_score(s, e.penalty, cfg);
            }
        }
        auto it = best.find(g);
        if (it == best.end() || s < it->second) best[g] = s;

        size_t k = 0;
        while (k < idx.size() && ++idx[k] == msgs[k]->entries.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    std::vector<LlrvEntry> all;
    for (const auto& [g, s] : best) all.push_back({s, g});
    std::sort(all.begin(), all.end(), nbldpc::entry_less);
    if (all.size() > cfg.n_m) all.resize(cfg.n_m);
    Llrv out;
    out.entries = std::move(all);
    out.normalize();
    return out;
}

// Random valid Llrv: `len` distinct indices, sorted penalties anchored at 0.
inline Llrv random_llrv(nbldpc::SplitMix64& rng, unsigned q, unsigned len) {
    std::vector<uint16_t> idx(q);
    for (unsigned i = 0; i < q; ++i) idx[i] = static_cast<uint16_t>(i);
    for (unsigned i = q; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);

    std::vector<double> pens(len);
    pens[0] = 0.0;
    for (unsigned i = 1; i < len; ++i) pens[i] = pens[i - 1] + rng.uniform() * 3.0;

    Llrv v;
    for (unsigned i = 0; i < len; ++i) v.entries.push_back({pens[i], idx[i]});
    // penalties are nondecreasing; enforce the tie rule on equal values
    std::sort(v.entries.begin(), v.entries.end(), nbldpc::entry_less);
    return v;
}

inline bool same_llrv(const Llrv& a, const Llrv& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i].penalty != b.entries[i].penalty || a.entries[i].index != b.entries[i].index)
            return false;
    return true;
}

} // namespace oracle
