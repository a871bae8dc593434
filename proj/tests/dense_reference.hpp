// Dense reference decoder for the untruncated-equivalence checks: messages
// are full q-length penalty arrays, no truncation, no compensation. The
// schedule mirrors the production decoder so that with n_m = q the two paths
// must agree exactly.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "nbldpc/code.hpp"
#include "nbldpc/gf.hpp"
#include "nbldpc/llrv.hpp"

namespace dense {

using nbldpc::FieldSpec;
using nbldpc::Llrv;
using nbldpc::ParityCheckMatrix;

using Vec = std::vector<double>; // index = GF symbol, value = penalty

inline Vec from_llrv(const Llrv& v, unsigned q) {
    Vec out(q, 0.0);
    for (const auto& e : v.entries) out[e.index] = e.penalty;
    return out;
}

inline Vec permute(const Vec& v, uint16_t h, const FieldSpec& f) {
    Vec out(v.size());
    for (unsigned b = 0; b < v.size(); ++b) out[f.mul(h, static_cast<uint16_t>(b))] = v[b];
    return out;
}

inline Vec inverse_permute(const Vec& v, uint16_t h, const FieldSpec& f) {
    Vec out(v.size());
    for (unsigned b = 0; b < v.size(); ++b) out[f.div(static_cast<uint16_t>(b), h)] = v[b];
    return out;
}

inline void normalize(Vec& v) {
    const double m = *std::min_element(v.begin(), v.end());
    if (m != 0.0)
        for (auto& x : v) x -= m;
}

inline Vec ecn(const Vec& a, const Vec& b, bool mm, const FieldSpec& f) {
    const unsigned q = f.q;
    Vec out(q, std::numeric_limits<double>::infinity());
    for (unsigned al = 0; al < q; ++al) {
        for (unsigned be = 0; be < q; ++be) {
            const unsigned g = al ^ be;
            const double s = mm ? std::max(a[al], b[be]) : a[al] + b[be];
            if (s < out[g]) out[g] = s;
        }
    }
    normalize(out);
    return out;
}

inline std::vector<Vec> cn(const std::vector<Vec>& in, bool mm, const FieldSpec& f) {
    const size_t dc = in.size();
    if (dc == 2) return {in[1], in[0]};
    std::vector<Vec> fwd(dc), bwd(dc);
    fwd[0] = in[0];
    for (size_t k = 1; k + 1 < dc; ++k) fwd[k] = ecn(fwd[k - 1], in[k], mm, f);
    bwd[dc - 1] = in[dc - 1];
    for (size_t k = dc - 1; k-- > 1;) bwd[k] = ecn(bwd[k + 1], in[k], mm, f);
    std::vector<Vec> out(dc);
    out[0] = bwd[1];
    out[dc - 1] = fwd[dc - 2];
    for (size_t j = 1; j + 1 < dc; ++j) out[j] = ecn(fwd[j - 1], bwd[j + 1], mm, f);
    return out;
}

struct Result {
    std::vector<uint16_t> decisions;
    unsigned iterations = 0;
    bool converged = false;
};

inline Result decode(const ParityCheckMatrix& h, const std::vector<Vec>& priors, bool mm,
                     unsigned max_iter, const FieldSpec& f) {
    struct EdgeRef {
        uint32_t row, pos;
    };
    std::vector<std::vector<EdgeRef>> col_edges(h.n);
    for (uint32_t i = 0; i < h.m; ++i)
        for (uint32_t k = 0; k < h.rows[i].size(); ++k)
            col_edges[h.rows[i][k].col].push_back({i, k});

    std::vector<std::vector<Vec>> vc(h.m), cv(h.m);
    for (uint32_t i = 0; i < h.m; ++i) {
        vc[i].resize(h.rows[i].size());
        cv[i].resize(h.rows[i].size());
        for (uint32_t k = 0; k < h.rows[i].size(); ++k)
            vc[i][k] = permute(priors[h.rows[i][k].col], h.rows[i][k].coeff, f);
    }

    Result res;
    res.decisions.assign(h.n, 0);
    for (unsigned iter = 1; iter <= max_iter; ++iter) {
        res.iterations = iter;
        for (uint32_t i = 0; i < h.m; ++i) {
            auto outs = cn(vc[i], mm, f);
            for (uint32_t k = 0; k < h.rows[i].size(); ++k)
                cv[i][k] = inverse_permute(outs[k], h.rows[i][k].coeff, f);
        }
        for (uint32_t j = 0; j < h.n; ++j) {
            const auto& edges = col_edges[j];
            // posterior: prior plus all incoming, decide by (score, index)
            Vec post = priors[j];
            for (const auto& e : edges) {
                const Vec& msg = cv[e.row][e.pos];
                for (unsigned b = 0; b < f.q; ++b) post[b] += msg[b];
            }
            uint16_t best = 0;
            for (unsigned b = 1; b < f.q; ++b)
                if (post[b] < post[best]) best = static_cast<uint16_t>(b);
            res.decisions[j] = best;

            for (size_t t = 0; t < edges.size(); ++t) {
                Vec u = priors[j];
                for (size_t s = 0; s < edges.size(); ++s) {
                    if (s == t) continue;
                    const Vec& msg = cv[edges[s].row][edges[s].pos];
                    for (unsigned b = 0; b < f.q; ++b) u[b] += msg[b];
                }
                normalize(u);
                vc[edges[t].row][edges[t].pos] =
                    permute(u, h.rows[edges[t].row][edges[t].pos].coeff, f);
            }
        }
    }
    res.converged = nbldpc::is_codeword(h, res.decisions, f);
    return res;
}

} // namespace dense
