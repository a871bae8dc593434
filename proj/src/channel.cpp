#include "nbldpc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nbldpc {

double sigma_from_snr(double snr_db, double rate) {
    if (rate <= 0.0 || rate > 1.0)
        throw std::invalid_argument("sigma_from_snr: rate must be in (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

ChannelConfig make_channel(double snr_db, double rate) {
    return {snr_db, rate, sigma_from_snr(snr_db, rate)};
}

std::vector<double> transmit_all_zero(size_t n_bits, double sigma, GaussianStream& rng) {
    std::vector<double> y(n_bits);
    for (auto& v : y) v = 1.0 + sigma * rng.next();
    return y;
}

double bit_llr(double y, double sigma) {
    if (sigma <= 0.0) {
        if (y == 0.0) return 0.0;
        return y > 0.0 ? 1e6 : -1e6;
    }
    return 2.0 * y / (sigma * sigma);
}

std::vector<double> symbol_metrics(std::span<const double> bit_llrs, const FieldSpec& f) {
    if (bit_llrs.size() != f.p)
        throw std::invalid_argument("symbol_metrics: expected log2(q) bit LLRs");
    std::vector<double> m(f.q, 0.0);
    for (unsigned beta = 1; beta < f.q; ++beta) {
        double s = 0.0;
        for (unsigned i = 0; i < f.p; ++i)
            if (beta & (1u << i)) s += bit_llrs[i];
        m[beta] = s;
    }
    return m;
}

Llrv normalize_sort_truncate(std::span<const double> metrics, unsigned n_m) {
    if (n_m == 0 || n_m > metrics.size())
        throw std::invalid_argument("normalize_sort_truncate: need 1 <= n_m <= q");
    const double best = *std::min_element(metrics.begin(), metrics.end());
    Llrv v;
    v.entries.reserve(metrics.size());
    for (unsigned beta = 0; beta < metrics.size(); ++beta)
        v.entries.push_back({metrics[beta] - best, static_cast<uint16_t>(beta)});
    std::sort(v.entries.begin(), v.entries.end(), entry_less);
    v.entries.resize(n_m);
    return v;
}

Llrv quantize(const Llrv& v, unsigned quant_bits, double step) {
    if (quant_bits < 2) throw std::invalid_argument("quantize: need Q >= 2 bits");
    if (!(step > 0.0)) throw std::invalid_argument("quantize: step must be positive");
    const double max_level = static_cast<double>((1u << quant_bits) - 1);
    Llrv out;
    out.entries.reserve(v.entries.size());
    for (const auto& e : v.entries) {
        double level = std::round(e.penalty / step);
        level = std::clamp(level, 0.0, max_level);
        out.entries.push_back({level, e.index});
    }
    std::sort(out.entries.begin(), out.entries.end(), entry_less);
    return out;
}

std::vector<Llrv> generate_priors(uint32_t n_symbols, const FieldSpec& f, double sigma,
                                  const PriorConfig& pc, GaussianStream& rng) {
    const double step = pc.quant_step > 0.0 ? pc.quant_step : (sigma > 0.0 ? 0.5 * sigma : 1.0);
    const auto y = transmit_all_zero(static_cast<size_t>(n_symbols) * f.p, sigma, rng);
    std::vector<double> llrs(f.p);
    std::vector<Llrv> priors;
    priors.reserve(n_symbols);
    for (uint32_t j = 0; j < n_symbols; ++j) {
        for (unsigned i = 0; i < f.p; ++i) llrs[i] = bit_llr(y[j * f.p + i], sigma);
        const auto metrics = symbol_metrics(llrs, f);
        Llrv prior = normalize_sort_truncate(metrics, pc.n_m);
        if (pc.quant_bits > 0) prior = quantize(prior, pc.quant_bits, step);
        priors.push_back(std::move(prior));
    }
    return priors;
}

} // namespace nbldpc
