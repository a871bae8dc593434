#include "nbldpc/decoder.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace nbldpc {

double DecoderConfig::sat_limit() const {
    if (quant_bits == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>((1u << quant_bits) - 1);
}

void validate_decoder_config(const DecoderConfig& cfg, unsigned q) {
    if (cfg.n_m == 0 || cfg.n_m > q)
        throw std::invalid_argument("decoder config: need 1 <= n_m <= q");
    if (cfg.ls_cn == 0 || cfg.ls_cn > cfg.n_m)
        throw std::invalid_argument("decoder config: need 1 <= ls_cn <= n_m");
    if (cfg.ls_vn == 0 || cfg.ls_vn > cfg.n_m)
        throw std::invalid_argument("decoder config: need 1 <= ls_vn <= n_m");
    if (cfg.max_iter == 0) throw std::invalid_argument("decoder config: need max_iter >= 1");
    if (cfg.quant_bits == 1 || cfg.quant_bits > 16)
        throw std::invalid_argument("decoder config: quant_bits must be 0 or in [2, 16]");
}

Llrv permute(const Llrv& msg, uint16_t h, const FieldSpec& f) {
    if (h == 0) throw std::invalid_argument("permute: zero coefficient");
    Llrv out = msg;
    for (auto& e : out.entries) e.index = f.mul(h, e.index);
    return out;
}

Llrv inverse_permute(const Llrv& msg, uint16_t h, const FieldSpec& f) {
    if (h == 0) throw std::invalid_argument("inverse_permute: zero coefficient");
    Llrv out = msg;
    for (auto& e : out.entries) e.index = f.div(e.index, h);
    return out;
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

Llrv ecn_combine(const Llrv& a, const Llrv& b, const DecoderConfig& cfg, const FieldSpec&) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ecn_combine: empty message");
    const bool mm = cfg.algorithm == Algorithm::MinMax;
    const double sat = cfg.sat_limit();
    const size_t cap = std::max<unsigned>(1, cfg.ls_cn);
    auto score = [&](double pa, double pb) {
        if (mm) return pa > pb ? pa : pb;
        const double s = pa + pb;
        return s > sat ? sat : s;
    };

    Llrv out;
    std::array<bool, 256> taken{};
    LlrvEntry last{0.0, 0};
    bool have_last = false;
    std::vector<LlrvEntry> live;
    live.reserve(cap);

    // Repeated bounded-frontier sweeps over the row/column-sorted score
    // matrix: each pass collects the ls_cn smallest keys above the previous
    // pass boundary, so the emission order equals a full sort.
    while (out.entries.size() < cfg.n_m) {
        live.clear();
        for (size_t i = 0; i < a.entries.size(); ++i) {
            const double pa = a.entries[i].penalty;
            if (live.size() == cap &&
                score(pa, b.entries.front().penalty) > live.back().penalty)
                break; // later rows only score worse
            for (size_t j = 0; j < b.entries.size(); ++j) {
                const double s = score(pa, b.entries[j].penalty);
                if (live.size() == cap && s > live.back().penalty) break;
                const uint16_t g = FieldSpec::add(a.entries[i].index, b.entries[j].index);
                if (taken[g]) continue;
                const LlrvEntry e{s, g};
                if (have_last && !entry_less(last, e)) continue;
                insert_bounded(live, e, cap);
            }
        }
        if (live.empty()) break;
        for (const auto& e : live) {
            if (out.entries.size() >= cfg.n_m) break;
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

std::vector<Llrv> cn_process(std::span<const Llrv> incoming, const DecoderConfig& cfg,
                             const FieldSpec& f) {
    const size_t dc = incoming.size();
    if (dc < 2) throw std::invalid_argument("cn_process: need d_c >= 2");
    if (dc == 2) return {incoming[1], incoming[0]};

    std::vector<Llrv> fwd(dc), bwd(dc);
    fwd[0] = incoming[0];
    for (size_t k = 1; k + 1 < dc; ++k) fwd[k] = ecn_combine(fwd[k - 1], incoming[k], cfg, f);
    bwd[dc - 1] = incoming[dc - 1];
    for (size_t k = dc - 1; k-- > 1;) bwd[k] = ecn_combine(bwd[k + 1], incoming[k], cfg, f);

    std::vector<Llrv> out(dc);
    out[0] = bwd[1];
    out[dc - 1] = fwd[dc - 2];
    for (size_t j = 1; j + 1 < dc; ++j) out[j] = ecn_combine(fwd[j - 1], bwd[j + 1], cfg, f);
    return out;
}

namespace {

// Adds one message's contribution to the per-symbol totals, compensating
// symbols it does not store.
void accumulate_message(const Llrv& msg, double offset, double sat, std::vector<double>& total,
                        std::vector<bool>& present) {
    const unsigned q = static_cast<unsigned>(total.size());
    double comp = msg.worst() + offset;
    if (comp > sat) comp = sat;
    std::vector<double> pen(q, comp);
    for (const auto& e : msg.entries) {
        pen[e.index] = e.penalty;
        present[e.index] = true;
    }
    for (unsigned beta = 0; beta < q; ++beta) {
        double s = total[beta] + pen[beta];
        total[beta] = s > sat ? sat : s;
    }
}

} // namespace

Llrv vn_update(const Llrv& prior, std::span<const Llrv> incoming, const DecoderConfig& cfg,
               const FieldSpec& f) {
    if (incoming.empty()) {
        Llrv out = prior; // first-iteration bypass
        out.normalize();
        return out;
    }
    const double sat = cfg.sat_limit();
    std::vector<double> total(f.q, 0.0);
    std::vector<bool> present(f.q, false);
    accumulate_message(prior, cfg.compensation_offset, sat, total, present);
    for (const auto& msg : incoming)
        accumulate_message(msg, cfg.compensation_offset, sat, total, present);

    std::vector<LlrvEntry> candidates;
    candidates.reserve(f.q);
    for (unsigned beta = 0; beta < f.q; ++beta)
        if (present[beta]) candidates.push_back({total[beta], static_cast<uint16_t>(beta)});
    return select_best(candidates, cfg.n_m, cfg.ls_vn);
}

std::pair<uint16_t, std::vector<double>> posterior_and_decide(const Llrv& prior,
                                                              std::span<const Llrv> incoming,
                                                              const DecoderConfig& cfg,
                                                              const FieldSpec& f) {
    const double sat = cfg.sat_limit();
    std::vector<double> total(f.q, 0.0);
    std::vector<bool> present(f.q, false);
    accumulate_message(prior, cfg.compensation_offset, sat, total, present);
    for (const auto& msg : incoming)
        accumulate_message(msg, cfg.compensation_offset, sat, total, present);

    uint16_t best = 0;
    for (unsigned beta = 1; beta < f.q; ++beta)
        if (total[beta] < total[best]) best = static_cast<uint16_t>(beta);
    return {best, std::move(total)};
}

DecodeResult decode(const ParityCheckMatrix& h, std::span<const Llrv> priors,
                    const DecoderConfig& cfg, const FieldSpec& f) {
    validate_decoder_config(cfg, f.q);
    if (priors.size() != h.n)
        throw std::invalid_argument("decode: prior count does not match column count");
    if (h.q != f.q) throw std::invalid_argument("decode: matrix q does not match field");

    struct EdgeRef {
        uint32_t row;
        uint32_t pos;
    };
    std::vector<std::vector<EdgeRef>> col_edges(h.n);
    for (uint32_t i = 0; i < h.m; ++i)
        for (uint32_t k = 0; k < h.rows[i].size(); ++k)
            col_edges[h.rows[i][k].col].push_back({i, k});

    // One message per edge in each direction, indexed as [row][pos].
    std::vector<std::vector<Llrv>> vc(h.m), cv(h.m);
    for (uint32_t i = 0; i < h.m; ++i) {
        vc[i].resize(h.rows[i].size());
        cv[i].resize(h.rows[i].size());
        for (uint32_t k = 0; k < h.rows[i].size(); ++k) {
            const auto& e = h.rows[i][k];
            vc[i][k] = permute(priors[e.col], e.coeff, f); // first-iteration bypass
        }
    }

    DecodeResult res;
    res.decisions.assign(h.n, 0);
    std::vector<Llrv> incoming, others;
    for (unsigned iter = 1; iter <= cfg.max_iter; ++iter) {
        res.iterations = iter;
        for (uint32_t i = 0; i < h.m; ++i) {
            auto outs = cn_process(vc[i], cfg, f);
            for (uint32_t k = 0; k < h.rows[i].size(); ++k)
                cv[i][k] = inverse_permute(outs[k], h.rows[i][k].coeff, f);
        }
        for (uint32_t j = 0; j < h.n; ++j) {
            const auto& edges = col_edges[j];
            incoming.clear();
            for (const auto& e : edges) incoming.push_back(cv[e.row][e.pos]);
            res.decisions[j] = posterior_and_decide(priors[j], incoming, cfg, f).first;
            for (size_t t = 0; t < edges.size(); ++t) {
                others.clear();
                for (size_t u = 0; u < edges.size(); ++u)
                    if (u != t) others.push_back(incoming[u]);
                const Llrv u = vn_update(priors[j], others, cfg, f);
                vc[edges[t].row][edges[t].pos] = permute(u, h.rows[edges[t].row][edges[t].pos].coeff, f);
            }
        }
        if (cfg.early_stop && is_codeword(h, res.decisions, f)) break;
    }
    res.converged = is_codeword(h, res.decisions, f);
    return res;
}

} // namespace nbldpc
