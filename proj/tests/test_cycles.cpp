#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nbldpc/cycles.hpp"
#include "nbldpc/rng.hpp"

using namespace nbldpc;

TEST_CASE("prior_gen_cycles") {
    CHECK(prior_gen_cycles(192, 32, 8, 10) == 3850); // 10 + 96 * 40
    CHECK(prior_gen_cycles(1, 4, 2, 0) == 6);        // ceil(1/2) = 1
    CHECK(prior_gen_cycles(0, 32, 8, 10) == 10);
}

TEST_CASE("ecn and vn step cycles") {
    CHECK(ecn_step_cycles(4, 8) == 14);
    CHECK(ecn_step_cycles(1, 1) == 4);
    CHECK(vn_op_cycles(6, 8) == 16);
    for (uint64_t n_m : {1u, 2u, 8u, 32u}) CHECK(ecn_step_cycles(n_m, n_m) == 2 + 2 * n_m);
}

TEST_CASE("row, iteration and frame composition") {
    CHECK(row_cycles(4, 4, 6, 8) == 44); // 2 * 14 + 16
    CHECK(iter_cycles(96, 4, 4, 6, 8) == 96 * 44);

    CycleParams p;
    p.n = 192;
    p.m = 96;
    p.d_c = 4;
    p.q = 32;
    p.n_m = 8;
    p.ls_cn = 4;
    p.ls_vn = 6;
    p.max_iter = 10;
    p.info_bits_per_frame = 480; // 96 symbols * 5 bits
    CycleConfig cc;
    const auto r = frame_report(p, cc);
    CHECK(r.prior_cycles == 3850);
    CHECK(r.row_cycles == 44);
    CHECK(r.iter_cycles == 4224);
    CHECK(r.frame_cycles == 46090);
    CHECK(r.throughput_mbps == doctest::Approx(480.0 * 120.0 / 46090.0));
    CHECK(r.throughput_mbps == doctest::Approx(1.2497).epsilon(1e-3));
    CHECK(r.memory_flat_bits == 0); // quant_bits = 0 skips the estimate
}

TEST_CASE("memory_bits") {
    const auto [flat, entry] = memory_bits(96, 4, 6, 32, 8);
    CHECK(flat == 14592);  // 96 * 4 * (6 + 32)
    CHECK(entry == 33792);  // 96 * 4 * 8 * (6 + 5)
    const auto [p2, m2] = memory_bits(1, 2, 6, 4, 2);
    CHECK(p2 == 20);
    CHECK(m2 == 32);
    CHECK_THROWS_AS(memory_bits(96, 4, 1, 32, 8), std::invalid_argument);
}

TEST_CASE("latency is monotone in the obvious knobs") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        CycleParams p;
        p.n = 8 + 2 * rng.below(128);
        p.m = p.n / 2;
        p.d_c = 2 + rng.below(6);
        p.q = 1u << (2 + rng.below(6));
        p.n_m = 1 + rng.below(p.q > 16 ? 16 : p.q);
        p.ls_cn = 1 + rng.below(p.n_m);
        p.ls_vn = 1 + rng.below(p.n_m);
        p.max_iter = 1 + rng.below(20);
        p.info_bits_per_frame = 100;
        CycleConfig cc;
        const auto base = frame_report(p, cc);

        auto bump = p;
        bump.max_iter += 1;
        CHECK(frame_report(bump, cc).frame_cycles > base.frame_cycles);
        bump = p;
        bump.m += 1;
        CHECK(frame_report(bump, cc).iter_cycles > base.iter_cycles);
        bump = p;
        bump.n_m += 1;
        CHECK(frame_report(bump, cc).row_cycles > base.row_cycles);
        bump = p;
        bump.d_c += 2;
        CHECK(frame_report(bump, cc).row_cycles > base.row_cycles);
    }
}

TEST_CASE("multiple decoder instances scale throughput linearly") {
    CycleParams p;
    p.n = 192;
    p.m = 96;
    p.d_c = 4;
    p.q = 32;
    p.n_m = 8;
    p.ls_cn = 4;
    p.ls_vn = 6;
    p.max_iter = 10;
    p.info_bits_per_frame = 480;
    CycleConfig one, four;
    four.n_decoders = 4;
    CHECK(frame_report(p, four).throughput_mbps ==
          doctest::Approx(4.0 * frame_report(p, one).throughput_mbps));
}
