#include "nbldpc/cycles.hpp"

#include <bit>
#include <stdexcept>

namespace nbldpc {

uint64_t prior_gen_cycles(uint64_t n, uint64_t q, uint64_t n_m, uint64_t t_overhead) {
    return t_overhead + ((n + 1) / 2) * (q + n_m);
}

uint64_t ecn_step_cycles(uint64_t ls_cn, uint64_t n_m) { return 2 + ls_cn + n_m; }

uint64_t vn_op_cycles(uint64_t ls_vn, uint64_t n_m) { return 2 + ls_vn + n_m; }

uint64_t row_cycles(uint64_t d_c, uint64_t ls_cn, uint64_t ls_vn, uint64_t n_m) {
    return ((d_c + 1) / 2) * ecn_step_cycles(ls_cn, n_m) + vn_op_cycles(ls_vn, n_m);
}

uint64_t iter_cycles(uint64_t m, uint64_t d_c, uint64_t ls_cn, uint64_t ls_vn, uint64_t n_m) {
    return m * row_cycles(d_c, ls_cn, ls_vn, n_m);
}

std::pair<uint64_t, uint64_t> memory_bits(uint64_t m, uint64_t d_c, uint64_t quant_bits,
                                          uint64_t q, uint64_t n_m) {
    if (quant_bits < 2)
        throw std::invalid_argument("memory_bits: quantization must be >= 2 bits when enabled");
    const uint64_t log2q = std::bit_width(q) - 1;
    const uint64_t flat = m * d_c * (quant_bits + q);
    const uint64_t entry = m * d_c * n_m * (quant_bits + log2q);
    return {flat, entry};
}

CycleReport frame_report(const CycleParams& p, const CycleConfig& cfg) {
    CycleReport r;
    r.prior_cycles = prior_gen_cycles(p.n, p.q, p.n_m, cfg.t_overhead);
    r.row_cycles = row_cycles(p.d_c, p.ls_cn, p.ls_vn, p.n_m);
    r.iter_cycles = p.m * r.row_cycles;
    r.frame_cycles = r.prior_cycles + p.max_iter * r.iter_cycles;
    if (r.frame_cycles > 0)
        r.throughput_mbps = static_cast<double>(cfg.n_decoders) *
                            static_cast<double>(p.info_bits_per_frame) * cfg.clock_mhz /
                            static_cast<double>(r.frame_cycles);
    if (p.quant_bits >= 2) {
        auto [flat, entry] = memory_bits(p.m, p.d_c, p.quant_bits, p.q, p.n_m);
        r.memory_flat_bits = flat;
        r.memory_entry_bits = entry;
    }
    return r;
}

} // namespace nbldpc
