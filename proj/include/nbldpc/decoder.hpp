#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nbldpc/code.hpp"
#include "nbldpc/gf.hpp"
#include "nbldpc/llrv.hpp"

namespace nbldpc {

enum class Algorithm { Ems, MinMax };

struct DecoderConfig {
    Algorithm algorithm = Algorithm::Ems;
    unsigned n_m = 8;
    unsigned quant_bits = 0; // 0 = floating point penalties
    unsigned ls_vn = 8;      // VN sorter length L_S-VN
    unsigned ls_cn = 8;      // CN sorter length L_S-CN
    unsigned max_iter = 10;
    double compensation_offset = 1.0;
    bool early_stop = false;

    // Saturation ceiling for penalty arithmetic in quantized mode.
    double sat_limit() const;
};

// Throws std::invalid_argument if ranges are inconsistent (n_m <= q etc.).
void validate_decoder_config(const DecoderConfig& cfg, unsigned q);

// Index map beta -> h * beta; penalties and order unchanged. h != 0.
Llrv permute(const Llrv& msg, uint16_t h, const FieldSpec& f);
Llrv inverse_permute(const Llrv& msg, uint16_t h, const FieldSpec& f);

// Two-input message combine (elementary check node). Candidates are all
// stored-entry pairs with gamma = alpha + beta and score = sum (EMS) or max
// (MM) of penalties; the n_m best distinct-gamma entries are kept. The search
// walks the sorted score matrix with at most ls_cn live candidates and is
// output-identical to the exhaustive combine for any ls_cn >= 1.
Llrv ecn_combine(const Llrv& a, const Llrv& b, const DecoderConfig& cfg, const FieldSpec& f);

// Forward-backward-merge over a d_c-stage trellis; output j is extrinsic
// (independent of incoming message j). Inputs are in the permuted domain.
std::vector<Llrv> cn_process(std::span<const Llrv> incoming, const DecoderConfig& cfg,
                             const FieldSpec& f);

// Variable node: score(beta) = prior(beta) + sum of incoming(beta) over the
// union of stored indices, with a missing index compensated by that message's
// worst penalty + compensation_offset. The n_m best are selected by a sorter
// bounded to ls_vn live candidates. Zero incoming messages pass the prior
// through (first-iteration bypass).
Llrv vn_update(const Llrv& prior, std::span<const Llrv> incoming, const DecoderConfig& cfg,
               const FieldSpec& f);

// Same scoring over all d_v neighbors and all q symbols; decision is the
// (score, index)-minimal symbol.
std::pair<uint16_t, std::vector<double>> posterior_and_decide(const Llrv& prior,
                                                              std::span<const Llrv> incoming,
                                                              const DecoderConfig& cfg,
                                                              const FieldSpec& f);

struct DecodeResult {
    std::vector<uint16_t> decisions;
    unsigned iterations = 0;
    bool converged = false;
};

// Layered row-by-row schedule: per iteration every row runs cn_process on the
// previous iteration's v-c messages, then all VNs refresh v-c messages and
// the posterior once at the end of the iteration. Runs exactly max_iter
// iterations unless early_stop finds a zero syndrome.
DecodeResult decode(const ParityCheckMatrix& h, std::span<const Llrv> priors,
                    const DecoderConfig& cfg, const FieldSpec& f);

} // namespace nbldpc
