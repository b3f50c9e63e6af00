#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nbscl/simulator.hpp"

using namespace nbscl;

TEST_CASE("frame rng is keyed by (seed, frame)") {
    FrameRng a(1, 7), b(1, 7), c(1, 8), d(2, 7);
    for (int i = 0; i < 16; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
        CHECK(va != d.next_u64());
    }
    FrameRng u(3, 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.next_unit();
        CHECK(x > 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("channel config noise variance convention") {
    const ChannelConfig cfg = ChannelConfig::make(0.0, 0.5, 1);
    CHECK(cfg.noise_var == doctest::Approx(1.0)); // sigma^2 = 1/(2 R) at 0 dB
    const ChannelConfig cfg2 = ChannelConfig::make(10.0, 0.5, 1);
    CHECK(cfg2.noise_var == doctest::Approx(0.1));
}

TEST_CASE("transmit is reproducible and matches the sign pattern at high SNR") {
    const ChannelConfig clean = ChannelConfig::make(4.0, 0.5, 1, true);
    const std::vector<FieldElem> cw{0, 1, 2, 3};
    FrameRng rng(5, 0);
    const auto y = transmit(cw, 2, clean, rng);
    REQUIRE(y.size() == 8);
    const double expect[8] = {1, 1, -1, 1, 1, -1, -1, -1};
    for (int i = 0; i < 8; ++i) CHECK(y[static_cast<std::size_t>(i)] == expect[i]);

    const ChannelConfig noisy = ChannelConfig::make(2.0, 0.5, 1, false);
    FrameRng r1(9, 4), r2(9, 4);
    CHECK(transmit(cw, 2, noisy, r1) == transmit(cw, 2, noisy, r2));
}

TEST_CASE("transmit noise variance is calibrated") {
    const ChannelConfig cfg = ChannelConfig::make(3.0, 0.5, 1, false);
    const std::vector<FieldElem> zero(1000, 0);
    double sum = 0.0, sum2 = 0.0;
    const int reps = 1000; // 10^6 samples
    for (int rep = 0; rep < reps; ++rep) {
        FrameRng rng(123, static_cast<std::uint64_t>(rep));
        for (double v : transmit(zero, 1, cfg, rng)) {
            const double noise = v - 1.0;
            sum += noise;
            sum2 += noise * noise;
        }
    }
    const double n = 1000.0 * reps;
    const double var = sum2 / n - (sum / n) * (sum / n);
    CHECK(var == doctest::Approx(cfg.noise_var).epsilon(0.01));
}

TEST_CASE("channel llrs: sign, grouping and clipping") {
    const Permutation perm(std::vector<int>{1, 2, 3, 0});
    const ChannelConfig cfg = ChannelConfig::make(1.0, 0.5, 1);
    std::vector<double> y(8);
    for (int i = 0; i < 8; ++i) y[static_cast<std::size_t>(i)] = 0.1 * (i - 3) + 0.05;

    const auto llrs = channel_llrs(y, 2, cfg, perm);
    REQUIRE(llrs.size() == 2);
    REQUIRE(llrs[0].size() == 4);
    for (int i = 0; i < 4; ++i) {
        const int src = perm.inverse_at(i);
        for (int j = 0; j < 2; ++j) {
            const double raw = 2.0 * y[static_cast<std::size_t>(src) * 2 + static_cast<std::size_t>(j)] / cfg.noise_var;
            CHECK(llrs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] ==
                  doctest::Approx(std::clamp(raw, -40.0, 40.0)));
        }
    }

    const auto zeros = channel_llrs(std::vector<double>(8, 0.0), 2, cfg, perm);
    for (const auto& v : zeros)
        for (double x : v) CHECK(x == 0.0);

    const auto clipped = channel_llrs(std::vector<double>(8, 1000.0), 2, cfg, perm);
    for (const auto& v : clipped)
        for (double x : v) CHECK(x == 40.0);
}

TEST_CASE("run_fer: noiseless channel has zero FER") {
    const CodeSpec code = make_ers_code(make_field(3), 4);
    DecoderSpec dec;
    dec.kind = DecoderKind::kScl;
    dec.list_size = 2;
    const auto res = run_fer(code, dec, {2.0}, {200, 50}, 1, 1, true);
    REQUIRE(res.size() == 1);
    CHECK(res[0].errors == 0);
    CHECK(res[0].fer == 0.0);
    CHECK(res[0].frames == 200);
}

TEST_CASE("run_fer is deterministic and thread-count invariant") {
    const CodeSpec code = make_ers_code(make_field(3), 4);
    DecoderSpec dec;
    dec.kind = DecoderKind::kScl;
    dec.list_size = 4;
    const std::vector<double> snrs{2.0};
    const StopRule stop{1024, 1000000};
    const auto a = run_fer(code, dec, snrs, stop, 7, 1);
    const auto b = run_fer(code, dec, snrs, stop, 7, 1);
    const auto c = run_fer(code, dec, snrs, stop, 7, 3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].errors == b[0].errors);
    CHECK(a[0].mean_field_ops == b[0].mean_field_ops);
    CHECK(a[0].mean_flops == b[0].mean_flops);
    CHECK(a[0].errors == c[0].errors);
    CHECK(a[0].mean_flops == c[0].mean_flops);
}

TEST_CASE("run_fer validates its configuration") {
    const CodeSpec code = make_ers_code(make_field(3), 4);
    DecoderSpec dec;
    dec.kind = DecoderKind::kScl;
    dec.list_size = 0;
    CHECK_THROWS_AS(run_fer(code, dec, {1.0}, {10, 10}, 1), ConfigError);
    dec.list_size = 2;
    CHECK_THROWS_AS(run_fer(code, dec, {}, {10, 10}, 1), ConfigError);

    const FieldPtr f = make_field(2);
    const CodeSpec custom = make_custom_code(f, NbMatrix::identity(f, 4));
    DecoderSpec bm;
    bm.kind = DecoderKind::kBm;
    CHECK_THROWS_AS(run_fer(custom, bm, {1.0}, {10, 10}, 1), ConfigError);
}

TEST_CASE("fer decreases with snr and with list size") {
    const CodeSpec code = make_ers_code(make_field(4), 7);
    DecoderSpec dec;
    dec.kind = DecoderKind::kScl;
    dec.list_size = 4;
    const StopRule stop{12000, 1000000};
    const auto sweep = run_fer(code, dec, {1.0, 2.5, 4.0}, stop, 11, 1);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[0].fer > sweep[1].fer);
    CHECK(sweep[1].fer > sweep[2].fer);

    // aggregate list monotonicity with common random numbers
    DecoderSpec d1 = dec, d2 = dec, d4 = dec;
    d1.list_size = 1;
    d2.list_size = 2;
    d4.list_size = 4;
    const StopRule stop2{4000, 1000000};
    const auto e1 = run_fer(code, d1, {2.5}, stop2, 13, 1)[0].errors;
    const auto e2 = run_fer(code, d2, {2.5}, stop2, 13, 1)[0].errors;
    const auto e4 = run_fer(code, d4, {2.5}, stop2, 13, 1)[0].errors;
    const auto slack = [](std::uint64_t e) {
        return 3.0 * std::sqrt(static_cast<double>(e));
    };
    CHECK(static_cast<double>(e2) <= static_cast<double>(e1) + slack(e1));
    CHECK(static_cast<double>(e4) <= static_cast<double>(e2) + slack(e2));
    CHECK(e1 > 0);
}

TEST_CASE("sorter choice changes flops but not field ops") {
    const CodeSpec code = make_ers_code(make_field(4), 7);
    DecoderSpec rstep, full;
    rstep.kind = full.kind = DecoderKind::kScl;
    rstep.list_size = full.list_size = 16;
    rstep.sorter = Sorter::kRStep;
    full.sorter = Sorter::kFull;
    const StopRule stop{512, 1000000};
    const auto a = run_fer(code, rstep, {3.0}, stop, 17, 1)[0];
    const auto b = run_fer(code, full, {3.0}, stop, 17, 1)[0];
    CHECK(a.mean_field_ops == b.mean_field_ops);
    CHECK(a.mean_flops < b.mean_flops);
    CHECK(a.errors == b.errors); // same survivor metrics, same decisions here
}

TEST_CASE("bm and chase decoders run through the harness") {
    const CodeSpec code = make_ers_code(make_field(4), 7);
    DecoderSpec bm, chase;
    bm.kind = DecoderKind::kBm;
    chase.kind = DecoderKind::kChaseBm;
    chase.eta = 3;
    const StopRule stop{600, 100};
    const auto rb = run_fer(code, bm, {4.0}, stop, 19, 1)[0];
    const auto rc = run_fer(code, chase, {4.0}, stop, 19, 1)[0];
    CHECK(rb.frames > 0);
    CHECK(rc.mean_field_ops > rb.mean_field_ops); // 8 test vectors vs 1
    CHECK(rc.errors <= rb.errors);                // chase only improves hard BM
}

TEST_CASE("count report and fer csv writers") {
    const CodeSpec code = make_ers_code(make_field(3), 4);
    DecoderSpec dec;
    dec.kind = DecoderKind::kScl;
    dec.list_size = 4;
    const StopRule stop{128, 1000};
    const auto res = run_fer(code, dec, {3.0}, stop, 29, 1);
    const SimMetadata meta = make_metadata(code, dec, stop, 29, 1, false);

    write_fer_csv("/tmp/nbscl_fer_writer.csv", meta, res);
    std::ifstream fer("/tmp/nbscl_fer_writer.csv");
    std::string body((std::istreambuf_iterator<char>(fer)), std::istreambuf_iterator<char>());
    CHECK(body.find("# decoder = scl(4,r-step)") != std::string::npos);
    CHECK(body.find("snr_db,frames,errors,fer,mean_field_ops,mean_flops") != std::string::npos);

    std::vector<LabeledResult> rows{{"scl(4,r-step)", res[0]}, {"sc", res[0]}};
    write_count_report("/tmp/nbscl_count_writer.csv", meta, 3.0, rows);
    std::ifstream cnt("/tmp/nbscl_count_writer.csv");
    std::string cbody((std::istreambuf_iterator<char>(cnt)), std::istreambuf_iterator<char>());
    CHECK(cbody.find("scheme,mean_field_ops,mean_flops") != std::string::npos);
    CHECK(cbody.find("scl(4,r-step),") != std::string::npos);
    CHECK(cbody.find("# snr_db = 3") != std::string::npos);
    std::remove("/tmp/nbscl_fer_writer.csv");
    std::remove("/tmp/nbscl_count_writer.csv");
}

TEST_CASE("sc decoder through the harness beats nothing but runs") {
    const CodeSpec code = make_ers_code(make_field(3), 4);
    DecoderSpec sc;
    sc.kind = DecoderKind::kSc;
    const auto r = run_fer(code, sc, {3.0}, {800, 100000}, 23, 1)[0];
    CHECK(r.frames == 800);
    CHECK(r.mean_flops > 0);
}
