#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbldpc/channel.hpp"
#include "nbldpc/code.hpp"
#include "nbldpc/config.hpp"
#include "nbldpc/cycles.hpp"
#include "nbldpc/decoder.hpp"
#include "nbldpc/gf.hpp"
#include "nbldpc/harness.hpp"

using namespace nbldpc;

namespace {

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedCode {
    ParityCheckMatrix h;
    FieldSpec f;
    std::string code_id;
};

unsigned log2u(unsigned q) {
    unsigned p = 0;
    while ((1u << p) < q) ++p;
    return p;
}

FieldSpec field_for(unsigned q, unsigned gf_poly) {
    if (gf_poly != 0) return build_field(log2u(q), gf_poly);
    return build_field(log2u(q));
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

LoadedCode load_code_from_alist(const std::string& path, unsigned gf_poly) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open code file '" + path + "'");
    LoadedCode lc;
    lc.h = load_alist_nb(in);
    lc.f = field_for(lc.h.q, gf_poly);
    lc.code_id = stem_of(path);
    return lc;
}

LoadedCode load_code(const EmulationSpec& spec) {
    if (!spec.code_file.empty()) return load_code_from_alist(spec.code_file, spec.gf_poly);
    if (!spec.qc_file.empty()) {
        std::ifstream in(spec.qc_file);
        if (!in) throw ConfigError("cannot open QC base file '" + spec.qc_file + "'");
        const auto base = load_qc_base(in);
        LoadedCode lc;
        lc.f = field_for(base.q, spec.gf_poly);
        lc.h = expand_qc(base, lc.f);
        lc.code_id = stem_of(spec.qc_file);
        return lc;
    }
    LoadedCode lc;
    lc.f = field_for(spec.q, spec.gf_poly);
    lc.h = build_regular_2dc(spec.gen_n, spec.gen_dc, lc.f, spec.gen_seed);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "gen%ux%uq%us%llu", spec.gen_n, spec.gen_dc, lc.f.q,
                  static_cast<unsigned long long>(spec.gen_seed));
    lc.code_id = buf;
    return lc;
}

DecoderConfig decoder_config(const EmulationSpec& spec) {
    DecoderConfig d;
    d.algorithm = spec.algorithm == "mm" ? Algorithm::MinMax : Algorithm::Ems;
    d.n_m = spec.n_m;
    d.quant_bits = spec.quant_bits;
    d.ls_vn = spec.ls_vn;
    d.ls_cn = spec.ls_cn;
    d.max_iter = spec.max_iter;
    d.compensation_offset = spec.compensation_offset;
    d.early_stop = spec.early_stop;
    return d;
}

RunConfig run_config(const EmulationSpec& spec) {
    RunConfig rc;
    rc.frame_limit = spec.frame_limit;
    rc.target_error_frames = spec.target_error_frames;
    rc.master_seed = spec.seed;
    rc.workers = spec.workers;
    rc.quant_step = spec.quant_step;
    return rc;
}

CycleConfig cycle_config(const EmulationSpec& spec) {
    return {spec.t_overhead, spec.clock_mhz, spec.n_decoders};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file '" + path + "'");
    out << "code_id,algorithm,q,n_m,Q,ls_vn,ls_cn,L,snr_db,frames,bit_errors,symbol_errors,"
           "frame_errors,ber,fer,avg_iter,est_throughput_mbps\n";
    for (const auto& r : rows) {
        out << r.code_id << ',' << r.algorithm << ',' << r.q << ',' << r.n_m << ','
            << r.quant_bits << ',' << r.ls_vn << ',' << r.ls_cn << ',' << r.max_iter << ','
            << fmt(r.stats.snr_db) << ',' << r.stats.frames << ',' << r.stats.bit_errors << ','
            << r.stats.symbol_errors << ',' << r.stats.frame_errors << ',' << fmt(r.stats.ber)
            << ',' << fmt(r.stats.fer) << ',' << fmt(r.stats.avg_iterations) << ','
            << fmt(r.stats.cycles.throughput_mbps) << '\n';
    }
}

std::string config_tag(const SweepRow& r) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%s_%s_nm%u_Q%u", r.code_id.c_str(), r.algorithm.c_str(),
                  r.n_m, r.quant_bits);
    return buf;
}

// One two-column (snr, ber) data file per configuration.
void write_plot_files(const std::string& prefix, const std::vector<SweepRow>& rows) {
    if (prefix.empty()) return;
    std::map<std::string, std::vector<const SweepRow*>> groups;
    for (const auto& r : rows) groups[config_tag(r)].push_back(&r);
    for (const auto& [tag, group] : groups) {
        std::ofstream out(prefix + tag + ".dat");
        for (const auto* r : group) out << fmt(r->stats.snr_db) << ' ' << fmt(r->stats.ber) << '\n';
    }
}

nlohmann::json row_to_json(const SweepRow& r) {
    return {{"code_id", r.code_id},
            {"algorithm", r.algorithm},
            {"q", r.q},
            {"n_m", r.n_m},
            {"quant_bits", r.quant_bits},
            {"ls_vn", r.ls_vn},
            {"ls_cn", r.ls_cn},
            {"max_iter", r.max_iter},
            {"snr_db", r.stats.snr_db},
            {"frames", r.stats.frames},
            {"bit_errors", r.stats.bit_errors},
            {"symbol_errors", r.stats.symbol_errors},
            {"frame_errors", r.stats.frame_errors},
            {"ber", r.stats.ber},
            {"fer", r.stats.fer},
            {"fer_wilson_95", {r.stats.fer_lo, r.stats.fer_hi}},
            {"avg_iterations", r.stats.avg_iterations},
            {"wall_time_s", r.stats.wall_time},
            {"frame_cycles", r.stats.cycles.frame_cycles},
            {"est_throughput_mbps", r.stats.cycles.throughput_mbps}};
}

SweepRow make_row(const LoadedCode& lc, const DecoderConfig& d, const PointStats& st) {
    SweepRow r;
    r.code_id = lc.code_id;
    r.algorithm = d.algorithm == Algorithm::Ems ? "ems" : "mm";
    r.q = lc.f.q;
    r.n_m = d.n_m;
    r.quant_bits = d.quant_bits;
    r.ls_vn = d.ls_vn;
    r.ls_cn = d.ls_cn;
    r.max_iter = d.max_iter;
    r.stats = st;
    return r;
}

EmulationSpec build_spec(const std::string& config_path, const std::vector<std::string>& sets,
                         bool require_code) {
    EmulationSpec spec =
        config_path.empty() ? EmulationSpec{} : load_spec_file(config_path);
    for (const auto& kv : sets) apply_override(spec, kv);
    if (const char* env = std::getenv("NBLDPC_SEED")) {
        apply_override(spec, std::string("seed=") + env); // env beats file and --set
    }
    finalize_spec(spec, require_code);
    return spec;
}

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& sets,
                 std::optional<double> gain_ber) {
    const auto spec = build_spec(config_path, sets, true);
    const auto lc = load_code(spec);
    const auto dcfg = decoder_config(spec);
    validate_decoder_config(dcfg, lc.f.q);
    const auto rc = run_config(spec);
    const auto cc = cycle_config(spec);

    std::vector<SweepRow> rows;
    for (double snr : spec.snr_db)
        rows.push_back(make_row(lc, dcfg, run_point(lc.h, lc.f, dcfg, snr, rc, cc)));

    write_csv(spec.out_csv, rows);
    write_plot_files(spec.plot_prefix, rows);

    nlohmann::json out;
    out["snr_convention"] = "Eb/N0 per information bit, dB";
    out["code_id"] = lc.code_id;
    out["seed"] = spec.seed;
    out["points"] = nlohmann::json::array();
    for (const auto& r : rows) out["points"].push_back(row_to_json(r));
    if (gain_ber) {
        std::vector<std::pair<double, double>> curve;
        for (const auto& r : rows) curve.emplace_back(r.stats.snr_db, r.stats.ber);
        const auto coded = snr_at_ber(curve, *gain_ber);
        if (!coded)
            throw InsufficientData("measured BER curve does not bracket target " +
                                   fmt(*gain_ber));
        out["coding_gain_db"] = uncoded_bpsk_snr_at(*gain_ber) - *coded;
        out["coded_snr_db_at_target"] = *coded;
        out["uncoded_snr_db_at_target"] = uncoded_bpsk_snr_at(*gain_ber);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& sets) {
    const auto spec = build_spec(config_path, sets, true);

    // Resolve the code axis: explicit file list, per-q regeneration with a
    // fixed nonzero pattern, or the single configured code.
    std::vector<std::shared_ptr<LoadedCode>> codes;
    if (!spec.sweep_codes.empty()) {
        for (const auto& path : spec.sweep_codes)
            codes.push_back(std::make_shared<LoadedCode>(load_code_from_alist(path, spec.gf_poly)));
    } else if (!spec.sweep_q.empty()) {
        for (unsigned q : spec.sweep_q) {
            if (q < 4 || q > 256 || (q & (q - 1)) != 0)
                throw ConfigError("key 'sweep_q': entries must be powers of two in [4, 256]");
            auto lc = std::make_shared<LoadedCode>();
            lc->f = field_for(q, 0);
            lc->h = build_regular_2dc(spec.gen_n, spec.gen_dc, lc->f, spec.gen_seed);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "gen%ux%uq%us%llu", spec.gen_n, spec.gen_dc, q,
                          static_cast<unsigned long long>(spec.gen_seed));
            lc->code_id = buf;
            codes.push_back(std::move(lc));
        }
    } else {
        codes.push_back(std::make_shared<LoadedCode>(load_code(spec)));
    }

    const auto n_m_axis = spec.sweep_n_m.empty() ? std::vector<unsigned>{spec.n_m} : spec.sweep_n_m;
    const auto q_bits_axis =
        spec.sweep_quant_bits.empty() ? std::vector<unsigned>{spec.quant_bits}
                                      : spec.sweep_quant_bits;

    std::vector<SweepCell> cells;
    for (const auto& lc : codes) {
        for (unsigned nm : n_m_axis) {
            if (nm > lc->f.q)
                throw ConfigError("sweep grid: n_m=" + std::to_string(nm) + " > q=" +
                                  std::to_string(lc->f.q) + " for code " + lc->code_id);
            for (unsigned qb : q_bits_axis) {
                for (double snr : spec.snr_db) {
                    DecoderConfig d = decoder_config(spec);
                    d.n_m = nm;
                    d.quant_bits = qb;
                    if (!spec.explicit_keys.count("ls_vn") || d.ls_vn > nm) d.ls_vn = nm;
                    if (!spec.explicit_keys.count("ls_cn") || d.ls_cn > nm) d.ls_cn = nm;
                    cells.push_back({lc->code_id, &lc->h, &lc->f, d, snr});
                }
            }
        }
    }

    const auto rows = sweep(cells, run_config(spec), cycle_config(spec), spec.checkpoint);
    write_csv(spec.out_csv, rows);
    write_plot_files(spec.plot_prefix, rows);

    nlohmann::json out;
    out["snr_convention"] = "Eb/N0 per information bit, dB";
    out["cells"] = rows.size();
    out["csv"] = spec.out_csv;
    out["rows"] = nlohmann::json::array();
    for (const auto& r : rows) out["rows"].push_back(row_to_json(r));
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_cycles(const std::string& config_path, const std::vector<std::string>& sets) {
    const auto spec = build_spec(config_path, sets, true);
    const auto lc = load_code(spec);
    auto [col_deg, row_deg] = degrees(lc.h);

    CycleParams p;
    p.n = lc.h.n;
    p.m = lc.h.m;
    p.d_c = *std::max_element(row_deg.begin(), row_deg.end());
    p.q = lc.f.q;
    p.n_m = spec.n_m;
    p.ls_cn = spec.ls_cn;
    p.ls_vn = spec.ls_vn;
    p.max_iter = spec.max_iter;
    p.quant_bits = spec.quant_bits;
    p.info_bits_per_frame = static_cast<uint64_t>(lc.h.n - std::min(lc.h.m, lc.h.n)) * lc.f.p;
    const auto r = frame_report(p, cycle_config(spec));

    nlohmann::json j = {{"code_id", lc.code_id},
                        {"prior_cycles", r.prior_cycles},
                        {"row_cycles", r.row_cycles},
                        {"iter_cycles", r.iter_cycles},
                        {"frame_cycles", r.frame_cycles},
                        {"throughput_mbps", r.throughput_mbps},
                        {"memory_flat_bits", r.memory_flat_bits},
                        {"memory_entry_bits", r.memory_entry_bits}};
    std::cout << j.dump(2) << '\n';
    std::cerr << "cycle report (" << lc.code_id << ")\n"
              << "  prior_cycles       " << r.prior_cycles << '\n'
              << "  row_cycles         " << r.row_cycles << '\n'
              << "  iter_cycles        " << r.iter_cycles << '\n'
              << "  frame_cycles       " << r.frame_cycles << '\n'
              << "  throughput_mbps    " << fmt(r.throughput_mbps) << '\n'
              << "  memory_flat_bits  " << r.memory_flat_bits << '\n'
              << "  memory_entry_bits  " << r.memory_entry_bits << '\n';
    return 0;
}

int cmd_validate_code(const std::string& path) {
    const auto lc = load_code_from_alist(path, 0);
    auto [col_deg, row_deg] = degrees(lc.h);
    const uint32_t dv_min = *std::min_element(col_deg.begin(), col_deg.end());
    const uint32_t dv_max = *std::max_element(col_deg.begin(), col_deg.end());
    const uint32_t dc_min = *std::min_element(row_deg.begin(), row_deg.end());
    const uint32_t dc_max = *std::max_element(row_deg.begin(), row_deg.end());
    const bool regular = dv_min == dv_max && dc_min == dc_max;

    nlohmann::json j = {{"code_id", lc.code_id}, {"n", lc.h.n},   {"m", lc.h.m},
                        {"q", lc.h.q},           {"rate", rate(lc.h)}, {"regular", regular},
                        {"d_v_min", dv_min},     {"d_v_max", dv_max},  {"d_c_min", dc_min},
                        {"d_c_max", dc_max},     {"valid", true}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_gen_code(const std::string& config_path, const std::vector<std::string>& sets,
                 const std::string& out_path) {
    const auto spec = build_spec(config_path, sets, true);
    if (!spec.code_file.empty())
        throw ConfigError("gen-code: expects a 'gen_n'+'gen_dc' or 'qc_file' code source");
    const auto lc = load_code(spec);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    save_alist_nb(lc.h, out);
    nlohmann::json j = {{"code_id", lc.code_id}, {"n", lc.h.n},       {"m", lc.h.m},
                        {"q", lc.h.q},           {"rate", rate(lc.h)}, {"file", out_path}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NB-LDPC code/decoder evaluation: EMS and Min-Max decoding with truncated "
                 "messages, AWGN Monte-Carlo BER/FER, sweeps, and a cycle-latency model"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string code_path;
    std::string out_path;
    double gain_ber = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "flat key = value config file");
        sub->add_option("--set", sets, "override a config key (key=value), repeatable");
    };

    auto* sim = app.add_subcommand("simulate", "run Monte-Carlo points over the snr_db list");
    add_common(sim);
    auto* gain_opt = sim->add_option("--gain-ber", gain_ber,
                                     "also report coding gain over uncoded BPSK at this BER");

    auto* swp = app.add_subcommand("sweep", "run the configured parameter grid with checkpointing");
    add_common(swp);

    auto* cyc = app.add_subcommand("cycles", "print the cycle-latency report (no decoding)");
    add_common(cyc);

    auto* val = app.add_subcommand("validate-code", "parse and check an alist code file");
    val->add_option("file", code_path, "alist file")->required();

    auto* gen = app.add_subcommand("gen-code", "generate or expand a code and write an alist");
    add_common(gen);
    gen->add_option("-o,--out", out_path, "output alist path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(config_path, sets,
                                gain_opt->count() ? std::optional<double>(gain_ber)
                                                  : std::nullopt);
        if (swp->parsed()) return cmd_sweep(config_path, sets);
        if (cyc->parsed()) return cmd_cycles(config_path, sets);
        if (val->parsed()) return cmd_validate_code(code_path);
        if (gen->parsed()) return cmd_gen_code(config_path, sets, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const InsufficientData& e) {
        std::cerr << "insufficient data: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
