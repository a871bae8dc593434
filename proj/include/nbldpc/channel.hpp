#pragma once

#include <span>
#include <vector>

#include "nbldpc/gf.hpp"
#include "nbldpc/llrv.hpp"
#include "nbldpc/rng.hpp"

namespace nbldpc {

// BPSK over AWGN with the all-zero codeword; bit 0 maps to +1. Penalties are
// min-domain: 0 is the most reliable symbol, larger means less likely (the
// negated view of keeping the highest probabilities).
struct ChannelConfig {
    double snr_db = 0.0; // Eb/N0 per information bit
    double rate = 0.5;
    double sigma = 1.0;
};

// sigma = sqrt(1 / (2 R 10^(snr/10))) for unit-energy BPSK, Eb/N0 convention.
double sigma_from_snr(double snr_db, double rate);

ChannelConfig make_channel(double snr_db, double rate);

// y_i = +1 + sigma * g_i; fully determined by the generator state.
std::vector<double> transmit_all_zero(size_t n_bits, double sigma, GaussianStream& rng);

// lambda = 2y/sigma^2 = log P(y|bit=0)/P(y|bit=1). sigma <= 0 takes the
// clamp path (+-1e6, sign of y).
double bit_llr(double y, double sigma);

// M(beta) = sum of bit LLRs over the set bits of beta; M(0) = 0.
std::vector<double> symbol_metrics(std::span<const double> bit_llrs, const FieldSpec& f);

// Subtract the minimum, sort by (penalty, index), keep the n_m best.
Llrv normalize_sort_truncate(std::span<const double> metrics, unsigned n_m);

// Penalty -> clamp(round(penalty/step), 0, 2^Q - 1), re-sorted under the
// pinned tie rule. Requires Q >= 2 and step > 0.
Llrv quantize(const Llrv& v, unsigned quant_bits, double step);

struct PriorConfig {
    unsigned n_m = 0;
    unsigned quant_bits = 0; // 0 = floating
    double quant_step = 0.0; // <= 0 = default 0.5 * sigma
};

// Full prior pipeline for n symbols: transmit -> bit LLRs -> symbol metrics
// -> normalize/sort/truncate -> optional quantize.
std::vector<Llrv> generate_priors(uint32_t n_symbols, const FieldSpec& f, double sigma,
                                  const PriorConfig& pc, GaussianStream& rng);

} // namespace nbldpc
