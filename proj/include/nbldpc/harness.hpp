#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbldpc/code.hpp"
#include "nbldpc/cycles.hpp"
#include "nbldpc/decoder.hpp"
#include "nbldpc/gf.hpp"

namespace nbldpc {

struct RunConfig {
    uint64_t frame_limit = 1000;
    uint64_t target_error_frames = 0; // 0 = run the full frame limit
    uint64_t master_seed = 1;
    unsigned workers = 1; // 0 = hardware concurrency
    double quant_step = 0.0; // <= 0 = default 0.5 * sigma
};

struct FrameResult {
    uint64_t bit_errors = 0;
    uint64_t symbol_errors = 0;
    bool frame_error = false;
    unsigned iterations = 0;
    bool converged = false;
};

// One PG -> DD pass: priors from the frame-seeded channel, decode, count
// errors against the all-zero codeword (bit errors = popcount of the binary
// image of the decided symbols).
FrameResult run_frame(const ParityCheckMatrix& h, const FieldSpec& f, const DecoderConfig& dcfg,
                      double sigma, double quant_step, uint64_t frame_seed);

struct PointStats {
    double snr_db = 0.0;
    uint64_t frames = 0;
    uint64_t bit_errors = 0;
    uint64_t symbol_errors = 0;
    uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double fer_lo = 0.0, fer_hi = 0.0; // 95% Wilson interval
    double avg_iterations = 0.0;
    double wall_time = 0.0;
    CycleReport cycles;
};

// Runs frames with seeds derived from (master_seed, frame_index) until the
// frame limit, or until target_error_frames is reached (checked at fixed
// chunk boundaries so the stats never depend on the worker count).
PointStats run_point(const ParityCheckMatrix& h, const FieldSpec& f, const DecoderConfig& dcfg,
                     double snr_db, const RunConfig& rc, const CycleConfig& cc);

// 95% Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

struct SweepCell {
    std::string code_id;
    const ParityCheckMatrix* h = nullptr;
    const FieldSpec* f = nullptr;
    DecoderConfig dcfg;
    double snr_db = 0.0;
};

struct SweepRow {
    std::string code_id;
    std::string algorithm;
    unsigned q = 0;
    unsigned n_m = 0;
    unsigned quant_bits = 0;
    unsigned ls_vn = 0, ls_cn = 0;
    unsigned max_iter = 0;
    PointStats stats;
};

// Runs every cell, one row per cell. If checkpoint_path is nonempty,
// completed cells are appended there as JSON lines and already-checkpointed
// cells are reused on resume.
std::vector<SweepRow> sweep(std::span<const SweepCell> cells, const RunConfig& rc,
                            const CycleConfig& cc, const std::string& checkpoint_path);

// Uncoded BPSK bit error rate at a given Eb/N0.
double uncoded_bpsk_ber(double ebn0_db);

// Eb/N0 (dB) where uncoded BPSK reaches target_ber, by bisection.
double uncoded_bpsk_snr_at(double target_ber);

// Log-linear interpolation of the SNR where a measured (snr, ber) curve
// crosses target_ber; nullopt when the curve does not bracket the target.
std::optional<double> snr_at_ber(std::span<const std::pair<double, double>> curve,
                                 double target_ber);

// Gain over uncoded BPSK at target_ber; throws std::runtime_error when the
// curve does not bracket the target.
double coding_gain(std::span<const std::pair<double, double>> curve, double target_ber);

} // namespace nbldpc
