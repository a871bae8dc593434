#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "nbldpc/channel.hpp"
#include "nbldpc/harness.hpp"

using namespace nbldpc;

namespace {

struct Setup {
    FieldSpec f = build_field(3);
    ParityCheckMatrix h = build_regular_2dc(24, 4, f, 5);
    DecoderConfig dcfg;
    Setup() {
        dcfg.algorithm = Algorithm::Ems;
        dcfg.n_m = 4;
        dcfg.ls_cn = 4;
        dcfg.ls_vn = 4;
        dcfg.max_iter = 5;
    }
};

} // namespace

TEST_CASE("run_frame counts errors against the all-zero word") {
    Setup s;
    // noiseless: zero errors, converged
    const auto clean = run_frame(s.h, s.f, s.dcfg, 0.0, 1.0, 9);
    CHECK(clean.bit_errors == 0);
    CHECK(clean.symbol_errors == 0);
    CHECK_FALSE(clean.frame_error);
    CHECK(clean.converged);

    // determinism: same frame seed, same result
    const auto a = run_frame(s.h, s.f, s.dcfg, 1.3, 0.0, 77);
    const auto b = run_frame(s.h, s.f, s.dcfg, 1.3, 0.0, 77);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.symbol_errors == b.symbol_errors);
    CHECK(a.frame_error == b.frame_error);

    // bit errors are popcounts of the decided symbols: a frame with at least
    // one symbol error carries at least that many bit errors
    bool saw_error = false;
    for (uint64_t fs = 0; fs < 50; ++fs) {
        const auto r = run_frame(s.h, s.f, s.dcfg, 1.5, 0.0, fs);
        CHECK(r.bit_errors >= r.symbol_errors);
        CHECK(r.bit_errors <= 3 * r.symbol_errors);
        CHECK((r.symbol_errors > 0) == r.frame_error);
        saw_error |= r.frame_error;
    }
    CHECK(saw_error);
}

TEST_CASE("run_point basics") {
    Setup s;
    RunConfig rc;
    rc.frame_limit = 1;
    rc.master_seed = 3;
    rc.workers = 1;
    CycleConfig cc;
    const auto one = run_point(s.h, s.f, s.dcfg, 3.0, rc, cc);
    CHECK(one.frames == 1);
    CHECK(one.snr_db == 3.0);
    CHECK(one.cycles.frame_cycles > 0);

    rc.frame_limit = 200;
    const auto pt = run_point(s.h, s.f, s.dcfg, 2.0, rc, cc);
    CHECK(pt.frames == 200);
    // ber is normalized by information bits: (n - m) * p = 12 * 3 per frame
    CHECK(pt.ber == doctest::Approx(static_cast<double>(pt.bit_errors) / (200.0 * 12 * 3)));
    CHECK(pt.fer == doctest::Approx(static_cast<double>(pt.frame_errors) / 200.0));
    CHECK(pt.fer >= pt.ber); // a frame error needs only one bit error
    CHECK(pt.avg_iterations == 5.0); // early_stop off: always max_iter
    CHECK(pt.fer_lo <= pt.fer);
    CHECK(pt.fer_hi >= pt.fer);
}

TEST_CASE("run_point stops at chunk boundaries once enough error frames") {
    Setup s;
    RunConfig rc;
    rc.frame_limit = 100000;
    rc.target_error_frames = 5;
    rc.master_seed = 3;
    rc.workers = 2;
    CycleConfig cc;
    const auto pt = run_point(s.h, s.f, s.dcfg, 0.0, rc, cc);
    CHECK(pt.frame_errors >= 5);
    CHECK(pt.frames % 64 == 0);
    CHECK(pt.frames < 100000);
}

TEST_CASE("run_point is independent of worker count") {
    Setup s;
    RunConfig rc;
    rc.frame_limit = 192;
    rc.master_seed = 11;
    CycleConfig cc;
    rc.workers = 1;
    const auto a = run_point(s.h, s.f, s.dcfg, 2.2, rc, cc);
    rc.workers = 4;
    const auto b = run_point(s.h, s.f, s.dcfg, 2.2, rc, cc);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.symbol_errors == b.symbol_errors);
    CHECK(a.frame_errors == b.frame_errors);
    CHECK(a.avg_iterations == b.avg_iterations);
}

TEST_CASE("wilson_interval") {
    const auto [lo0, hi0] = wilson_interval(0, 100);
    CHECK(lo0 == 0.0);
    CHECK(hi0 == doctest::Approx(0.0370).epsilon(1e-2));
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.404).epsilon(1e-2));
    CHECK(hi == doctest::Approx(0.596).epsilon(1e-2));
    const auto [le, he] = wilson_interval(0, 0);
    CHECK(le == 0.0);
    CHECK(he == 1.0);
}

TEST_CASE("uncoded BPSK reference and coding gain") {
    CHECK(uncoded_bpsk_ber(0.0) == doctest::Approx(0.0786).epsilon(1e-2));
    CHECK(uncoded_bpsk_snr_at(1e-5) == doctest::Approx(9.588).epsilon(1e-3));

    const std::vector<std::pair<double, double>> curve{
        {3.0, 1e-3}, {4.0, 1e-5}, {5.0, 1e-8}};
    const auto x = snr_at_ber(curve, 1e-5);
    REQUIRE(x.has_value());
    CHECK(*x == doctest::Approx(4.0));
    const auto mid = snr_at_ber(curve, 1e-4);
    REQUIRE(mid.has_value());
    CHECK(*mid == doctest::Approx(3.5)); // log-linear midpoint

    CHECK(coding_gain(curve, 1e-5) == doctest::Approx(9.588 - 4.0).epsilon(1e-3));

    CHECK_FALSE(snr_at_ber(curve, 1e-12).has_value());
    CHECK_THROWS_AS(coding_gain(curve, 1e-12), std::runtime_error);
    const std::vector<std::pair<double, double>> tiny{{3.0, 1e-3}};
    CHECK_THROWS_AS(coding_gain(tiny, 1e-3), std::runtime_error);
}

TEST_CASE("sweep runs every cell and resumes from its checkpoint") {
    Setup s;
    DecoderConfig d2 = s.dcfg;
    d2.algorithm = Algorithm::MinMax;
    std::vector<SweepCell> cells;
    for (double snr : {1.5, 2.5})
        for (const auto* d : {&s.dcfg, &d2})
            cells.push_back({"gen-24-4", &s.h, &s.f, *d, snr});

    RunConfig rc;
    rc.frame_limit = 64;
    rc.master_seed = 2;
    rc.workers = 2;
    CycleConfig cc;

    const auto plain = sweep(cells, rc, cc, "");
    REQUIRE(plain.size() == 4);
    for (const auto& row : plain) CHECK(row.stats.frames == 64);
    CHECK(plain[0].algorithm == "ems");
    CHECK(plain[1].algorithm == "mm");

    const auto ckpt = std::filesystem::temp_directory_path() / "nbldpc_sweep_ckpt.jsonl";
    std::filesystem::remove(ckpt);
    const std::vector<SweepCell> first_half(cells.begin(), cells.begin() + 2);
    sweep(first_half, rc, cc, ckpt.string());
    const auto resumed = sweep(cells, rc, cc, ckpt.string());
    REQUIRE(resumed.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(resumed[i].stats.bit_errors == plain[i].stats.bit_errors);
        CHECK(resumed[i].stats.frame_errors == plain[i].stats.frame_errors);
        CHECK(resumed[i].stats.avg_iterations == plain[i].stats.avg_iterations);
    }
    std::filesystem::remove(ckpt);
}
