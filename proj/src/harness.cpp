#include "nbldpc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "nbldpc/channel.hpp"
#include "nbldpc/rng.hpp"

namespace nbldpc {

FrameResult run_frame(const ParityCheckMatrix& h, const FieldSpec& f, const DecoderConfig& dcfg,
                      double sigma, double quant_step, uint64_t frame_seed) {
    GaussianStream g(frame_seed);
    PriorConfig pc{dcfg.n_m, dcfg.quant_bits, quant_step};
    const auto priors = generate_priors(h.n, f, sigma, pc, g);
    const auto dec = decode(h, priors, dcfg, f);

    FrameResult r;
    r.iterations = dec.iterations;
    r.converged = dec.converged;
    for (uint16_t s : dec.decisions) {
        if (s != 0) {
            ++r.symbol_errors;
            r.bit_errors += std::popcount(static_cast<unsigned>(s));
        }
    }
    r.frame_error = r.symbol_errors > 0;
    return r;
}

PointStats run_point(const ParityCheckMatrix& h, const FieldSpec& f, const DecoderConfig& dcfg,
                     double snr_db, const RunConfig& rc, const CycleConfig& cc) {
    if (rc.frame_limit == 0) throw std::invalid_argument("run_point: frame_limit must be >= 1");
    const double r = rate(h);
    if (r <= 0.0) throw std::invalid_argument("run_point: rate must be positive for noise scaling");
    const double sigma = sigma_from_snr(snr_db, r);

    unsigned workers = rc.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    const auto t0 = std::chrono::steady_clock::now();
    PointStats st;
    st.snr_db = snr_db;
    uint64_t total_iters = 0;

    // Fixed chunk size: the early-stop decision points are the same for any
    // worker count, keeping the aggregate bitwise reproducible.
    constexpr uint64_t kChunk = 64;
    std::vector<FrameResult> results(kChunk);
    while (st.frames < rc.frame_limit) {
        const uint64_t count = std::min(kChunk, rc.frame_limit - st.frames);
        const uint64_t base = st.frames;
        std::atomic<uint64_t> cursor{0};
        auto worker = [&]() {
            for (;;) {
                const uint64_t i = cursor.fetch_add(1);
                if (i >= count) return;
                results[i] = run_frame(h, f, dcfg, sigma, rc.quant_step,
                                       seed_for_frame(rc.master_seed, base + i));
            }
        };
        if (workers <= 1 || count == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            const unsigned nt = static_cast<unsigned>(std::min<uint64_t>(workers, count));
            pool.reserve(nt);
            for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        for (uint64_t i = 0; i < count; ++i) {
            st.bit_errors += results[i].bit_errors;
            st.symbol_errors += results[i].symbol_errors;
            st.frame_errors += results[i].frame_error ? 1 : 0;
            total_iters += results[i].iterations;
        }
        st.frames += count;
        if (rc.target_error_frames > 0 && st.frame_errors >= rc.target_error_frames) break;
    }

    const uint64_t info_bits = static_cast<uint64_t>(h.n - std::min(h.m, h.n)) * f.p;
    st.ber = info_bits > 0
                 ? static_cast<double>(st.bit_errors) / (static_cast<double>(st.frames) * info_bits)
                 : 0.0;
    st.fer = static_cast<double>(st.frame_errors) / static_cast<double>(st.frames);
    std::tie(st.fer_lo, st.fer_hi) = wilson_interval(st.frame_errors, st.frames);
    st.avg_iterations = static_cast<double>(total_iters) / static_cast<double>(st.frames);
    st.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    auto [col_deg, row_deg] = degrees(h);
    CycleParams cp;
    cp.n = h.n;
    cp.m = h.m;
    cp.d_c = row_deg.empty() ? 0 : *std::max_element(row_deg.begin(), row_deg.end());
    cp.q = f.q;
    cp.n_m = dcfg.n_m;
    cp.ls_cn = dcfg.ls_cn;
    cp.ls_vn = dcfg.ls_vn;
    cp.max_iter = dcfg.max_iter;
    cp.quant_bits = dcfg.quant_bits;
    cp.info_bits_per_frame = info_bits;
    st.cycles = frame_report(cp, cc);
    return st;
}

std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    // at the boundaries center and half agree analytically; round-off would
    // otherwise leave a stray 1e-18 instead of an exact 0 or 1
    const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = k == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

namespace {

std::string cell_key(const SweepRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s|%s|%u|%u|%u|%u|%u|%u|%.10g", r.code_id.c_str(),
                  r.algorithm.c_str(), r.q, r.n_m, r.quant_bits, r.ls_vn, r.ls_cn, r.max_iter,
                  r.stats.snr_db);
    return buf;
}

nlohmann::json stats_to_json(const PointStats& s) {
    return {{"snr_db", s.snr_db},
            {"frames", s.frames},
            {"bit_errors", s.bit_errors},
            {"symbol_errors", s.symbol_errors},
            {"frame_errors", s.frame_errors},
            {"ber", s.ber},
            {"fer", s.fer},
            {"fer_lo", s.fer_lo},
            {"fer_hi", s.fer_hi},
            {"avg_iterations", s.avg_iterations},
            {"wall_time", s.wall_time},
            {"prior_cycles", s.cycles.prior_cycles},
            {"row_cycles", s.cycles.row_cycles},
            {"iter_cycles", s.cycles.iter_cycles},
            {"frame_cycles", s.cycles.frame_cycles},
            {"throughput_mbps", s.cycles.throughput_mbps},
            {"memory_flat_bits", s.cycles.memory_flat_bits},
            {"memory_entry_bits", s.cycles.memory_entry_bits}};
}

PointStats stats_from_json(const nlohmann::json& j) {
    PointStats s;
    s.snr_db = j.at("snr_db");
    s.frames = j.at("frames");
    s.bit_errors = j.at("bit_errors");
    s.symbol_errors = j.at("symbol_errors");
    s.frame_errors = j.at("frame_errors");
    s.ber = j.at("ber");
    s.fer = j.at("fer");
    s.fer_lo = j.at("fer_lo");
    s.fer_hi = j.at("fer_hi");
    s.avg_iterations = j.at("avg_iterations");
    s.wall_time = j.at("wall_time");
    s.cycles.prior_cycles = j.at("prior_cycles");
    s.cycles.row_cycles = j.at("row_cycles");
    s.cycles.iter_cycles = j.at("iter_cycles");
    s.cycles.frame_cycles = j.at("frame_cycles");
    s.cycles.throughput_mbps = j.at("throughput_mbps");
    s.cycles.memory_flat_bits = j.at("memory_flat_bits");
    s.cycles.memory_entry_bits = j.at("memory_entry_bits");
    return s;
}

} // namespace

std::vector<SweepRow> sweep(std::span<const SweepCell> cells, const RunConfig& rc,
                            const CycleConfig& cc, const std::string& checkpoint_path) {
    std::map<std::string, PointStats> done;
    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path);
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            done[j.at("key").get<std::string>()] = stats_from_json(j.at("stats"));
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (const auto& cell : cells) {
        if (cell.dcfg.n_m > cell.f->q)
            throw std::invalid_argument("sweep: incompatible cell, n_m > q for code " +
                                        cell.code_id);
        SweepRow row;
        row.code_id = cell.code_id;
        row.algorithm = cell.dcfg.algorithm == Algorithm::Ems ? "ems" : "mm";
        row.q = cell.f->q;
        row.n_m = cell.dcfg.n_m;
        row.quant_bits = cell.dcfg.quant_bits;
        row.ls_vn = cell.dcfg.ls_vn;
        row.ls_cn = cell.dcfg.ls_cn;
        row.max_iter = cell.dcfg.max_iter;
        row.stats.snr_db = cell.snr_db;

        const std::string key = cell_key(row);
        auto it = done.find(key);
        if (it != done.end()) {
            row.stats = it->second;
        } else {
            row.stats = run_point(*cell.h, *cell.f, cell.dcfg, cell.snr_db, rc, cc);
            if (!checkpoint_path.empty()) {
                std::ofstream out(checkpoint_path, std::ios::app);
                out << nlohmann::json{{"key", key}, {"stats", stats_to_json(row.stats)}}.dump()
                    << '\n';
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double uncoded_bpsk_ber(double ebn0_db) {
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return 0.5 * std::erfc(std::sqrt(ebn0));
}

double uncoded_bpsk_snr_at(double target_ber) {
    if (target_ber <= 0.0 || target_ber >= 0.5)
        throw std::invalid_argument("uncoded_bpsk_snr_at: target must be in (0, 0.5)");
    double lo = -20.0, hi = 30.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (uncoded_bpsk_ber(mid) > target_ber)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<double> snr_at_ber(std::span<const std::pair<double, double>> curve,
                                 double target_ber) {
    std::vector<std::pair<double, double>> pts(curve.begin(), curve.end());
    std::sort(pts.begin(), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto [s0, b0] = pts[i];
        const auto [s1, b1] = pts[i + 1];
        if (b0 <= 0.0 || b1 <= 0.0) continue;
        if ((b0 >= target_ber && b1 <= target_ber) || (b0 <= target_ber && b1 >= target_ber)) {
            if (b0 == b1) return s0;
            const double t = (std::log10(target_ber) - std::log10(b0)) /
                             (std::log10(b1) - std::log10(b0));
            return s0 + t * (s1 - s0);
        }
    }
    return std::nullopt;
}

double coding_gain(std::span<const std::pair<double, double>> curve, double target_ber) {
    const auto coded = snr_at_ber(curve, target_ber);
    if (!coded)
        throw std::runtime_error("coding_gain: measured curve does not bracket the target BER");
    return uncoded_bpsk_snr_at(target_ber) - *coded;
}

} // namespace nbldpc
