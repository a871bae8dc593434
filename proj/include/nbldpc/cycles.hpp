#pragma once

#include <cstdint>
#include <utility>

namespace nbldpc {

struct CycleConfig {
    uint64_t t_overhead = 10; // pipeline fill before the prior sorter; no published value
    double clock_mhz = 120.0;
    unsigned n_decoders = 1;
};

struct CycleReport {
    uint64_t prior_cycles = 0;
    uint64_t row_cycles = 0;
    uint64_t iter_cycles = 0;
    uint64_t frame_cycles = 0;
    double throughput_mbps = 0.0;
    uint64_t memory_flat_bits = 0;  // one (Q + q)-bit word per edge: m * d_c * (Q + q)
    uint64_t memory_entry_bits = 0; // n_m entries per edge: m * d_c * n_m * (Q + log2 q)
};

// t_overhead + ceil(n/2) * (q + n_m): two prior-generator channels.
uint64_t prior_gen_cycles(uint64_t n, uint64_t q, uint64_t n_m, uint64_t t_overhead);

// 2 + L_S-CN + n_m per elementary check-node step.
uint64_t ecn_step_cycles(uint64_t ls_cn, uint64_t n_m);

// 2 + L_S-VN + n_m per variable-node operation.
uint64_t vn_op_cycles(uint64_t ls_vn, uint64_t n_m);

// Modeled row latency: ceil(d_c/2) serialized ECN stages (forward and
// backward run in parallel, merges overlap the second half) plus one VN
// drain. This composition is an approximation, isolated here so alternative
// schedules can be swapped.
uint64_t row_cycles(uint64_t d_c, uint64_t ls_cn, uint64_t ls_vn, uint64_t n_m);

uint64_t iter_cycles(uint64_t m, uint64_t d_c, uint64_t ls_cn, uint64_t ls_vn, uint64_t n_m);

// Both buffer-size readings: (flat_word_bits, per_entry_bits).
// Requires Q >= 2 when quantization is enabled.
std::pair<uint64_t, uint64_t> memory_bits(uint64_t m, uint64_t d_c, uint64_t quant_bits,
                                          uint64_t q, uint64_t n_m);

struct CycleParams {
    uint64_t n = 0, m = 0, d_c = 0;
    uint64_t q = 0, n_m = 0;
    uint64_t ls_cn = 0, ls_vn = 0;
    uint64_t max_iter = 0;
    uint64_t quant_bits = 0;       // 0 skips the memory estimate
    uint64_t info_bits_per_frame = 0;
};

CycleReport frame_report(const CycleParams& p, const CycleConfig& cfg);

} // namespace nbldpc
