#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbldpc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value emulation spec; one key per emulation parameter. Defaults
// are filled at construction and `explicit_keys` records which keys the user
// actually set.
struct EmulationSpec {
    // code source (exactly one of: code_file, qc_file, gen_n+gen_dc)
    std::string code_file;
    std::string qc_file;
    unsigned gen_n = 0;
    unsigned gen_dc = 0;
    uint64_t gen_seed = 1;
    unsigned q = 32;
    unsigned gf_poly = 0; // 0 = pinned default for log2(q)

    // decoder
    std::string algorithm = "ems"; // ems | mm
    unsigned n_m = 8;
    unsigned quant_bits = 0; // 0 = floating
    double quant_step = 0.0; // <= 0 = 0.5 * sigma at the operating point
    unsigned ls_vn = 0; // 0 = n_m
    unsigned ls_cn = 0; // 0 = n_m
    unsigned max_iter = 10;
    double compensation_offset = 1.0;
    bool early_stop = false;

    // run
    std::vector<double> snr_db{4.4};
    uint64_t frame_limit = 1000;
    uint64_t target_error_frames = 0;
    uint64_t seed = 1;
    unsigned workers = 0; // 0 = available parallelism

    // cycle model
    uint64_t t_overhead = 10;
    double clock_mhz = 120.0;
    unsigned n_decoders = 1;

    // sweep axes
    std::vector<unsigned> sweep_n_m;
    std::vector<unsigned> sweep_quant_bits;
    std::vector<unsigned> sweep_q;
    std::vector<std::string> sweep_codes;

    // outputs
    std::string out_csv = "results.csv";
    std::string checkpoint;
    std::string plot_prefix = "curve_";

    std::set<std::string> explicit_keys;
};

// Parses `key = value` lines ('#' comments, comma-separated lists). Throws
// ConfigError naming the offending key on unknown keys or type mismatches.
EmulationSpec parse_spec(const std::string& text);

EmulationSpec load_spec_file(const std::string& path);

// Applies a single "key=value" override (the --set flag).
void apply_override(EmulationSpec& spec, const std::string& keyval);

// Fills derived defaults (ls_vn/ls_cn = n_m) and cross-checks consistency;
// throws ConfigError naming the key and constraint. require_code demands a
// code source.
void finalize_spec(EmulationSpec& spec, bool require_code = true);

} // namespace nbldpc
