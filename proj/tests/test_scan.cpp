#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mertens/checkpoint.hpp"
#include "mertens/scan.hpp"
#include "mertens/stats_io.hpp"
#include "oracles.hpp"

using namespace mertens;

namespace {

// Paper-verified M(2^n) for n = 0..30.
constexpr i64 kMertensPow2[] = {1,   0,    -1,  -2,  -1,  -4,   -1,  -2,  -1,   -4,  -4,
                                7,   -19,  22,  -32, 26,  14,   -20, 24,  -125, 257, -362,
                                228, -10,  211, -1042, 329, 330, -1703, 6222, -10374};

struct TempFile {
    std::string path;
    explicit TempFile(const char* name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("small scans: zeros and final values") {
    const MertensStats s10 = mertens_scan(10, 5, kWheelPeriod);
    CHECK(s10.running.M == -1);
    CHECK(s10.zeros == std::vector<u64>{2});

    const MertensStats s1k = mertens_scan(1 << 10, 100, kWheelPeriod);
    CHECK(s1k.running.M == -4);

    const MertensStats v1k = mertens_scan(1000, 100, kWheelPeriod);
    CHECK(v1k.zeros.size() == 92);
}

TEST_CASE("scan matches paper M(2^n) table") {
    for (int n = 10; n <= 24; ++n) {
        const MertensStats st = mertens_scan(u64{1} << n, u64{1} << 30);
        CAPTURE(n);
        CHECK(st.running.M == kMertensPow2[n]);
    }
}

TEST_CASE("scan stats equal brute-force simulation") {
    const u64 limit = 1'000'000;
    const u64 stride = 10'000;
    const MertensStats brute = oracle::brute_stats(limit, stride);
    const MertensStats scanned = mertens_scan(limit, stride, kWheelPeriod * 8);
    CHECK(scanned == brute);
    CHECK(scanned.running.M == 212);
}

TEST_CASE("scan is invariant under block length and thread count") {
    const u64 limit = 2'000'000;
    ScanConfig base;
    base.limit = limit;
    base.stride = 100'000;
    base.block_len = kWheelPeriod;
    const MertensStats ref = mertens_scan(base);

    ScanConfig wide = base;
    wide.block_len = kWheelPeriod * 16;
    CHECK(mertens_scan(wide) == ref);

    ScanConfig threaded = wide;
    threaded.threads = 4;
    CHECK(mertens_scan(threaded) == ref);
}

TEST_CASE("bucket scan produces byte-identical stats") {
    for (u64 limit : {u64{10'000}, u64{1'000'000}}) {
        const MertensStats plain = mertens_scan(limit, 10'000, kWheelPeriod);
        const MertensStats bucketed = bucket_scan(limit, kWheelPeriod, 10'000);
        CAPTURE(limit);
        CHECK(plain == bucketed);
    }
    // larger blocks too
    CHECK(bucket_scan(3'000'000, kWheelPeriod * 32, 100'000) ==
          mertens_scan(3'000'000, 100'000, kWheelPeriod * 32));
}

TEST_CASE("scan parameter validation") {
    CHECK_THROWS_AS(mertens_scan(0, 100, kWheelPeriod), parameter_error);
    CHECK_THROWS_AS(mertens_scan(100, 100, 1000), parameter_error);  // not a wheel multiple
    CHECK_THROWS_AS(mertens_scan(100, 0, kWheelPeriod), parameter_error);
}

TEST_CASE("extrema invariants hold on a 10^6 scan") {
    const MertensStats st = mertens_scan(1'000'000, 100'000);
    i64 best_max = 0, best_min = 0;
    u64 prev_n = 0;
    for (auto [n, M] : st.extrema) {
        CHECK(n > prev_n);
        prev_n = n;
        const bool new_max = M > best_max;
        const bool new_min = M < best_min;
        CHECK((new_max || new_min));
        if (new_max) best_max = M;
        if (new_min) best_min = M;
    }
    CHECK(st.running.max == best_max);
    CHECK(st.running.min == best_min);
}

TEST_CASE("checkpoint: interrupted scan resumes to identical stats") {
    TempFile cp("mertens_scan_test.cp");
    ScanConfig cfg;
    cfg.limit = 1'000'000;
    cfg.stride = 50'000;
    cfg.block_len = kWheelPeriod * 4;
    cfg.checkpoint_path = cp.path;
    cfg.checkpoint_every = 4;
    cfg.stop_after_blocks = 9;

    const MertensStats partial = mertens_scan(cfg);
    CHECK(partial.running.n < cfg.limit);
    REQUIRE(std::filesystem::exists(cp.path));

    ScanConfig resume = cfg;
    resume.stop_after_blocks = 0;
    const MertensStats resumed = mertens_scan(resume);

    ScanConfig clean = cfg;
    clean.stop_after_blocks = 0;
    clean.checkpoint_path.clear();
    const MertensStats uninterrupted = mertens_scan(clean);
    CHECK(resumed == uninterrupted);
}

TEST_CASE("checkpoint: config mismatch and corruption are refused") {
    TempFile cp("mertens_scan_test2.cp");
    ScanConfig cfg;
    cfg.limit = 500'000;
    cfg.stride = 50'000;
    cfg.block_len = kWheelPeriod * 2;
    cfg.checkpoint_path = cp.path;
    cfg.stop_after_blocks = 5;
    (void)mertens_scan(cfg);
    REQUIRE(std::filesystem::exists(cp.path));

    SUBCASE("different block length refuses to resume") {
        ScanConfig other = cfg;
        other.stop_after_blocks = 0;
        other.block_len = kWheelPeriod * 4;
        CHECK_THROWS_AS(mertens_scan(other), data_error);
    }
    SUBCASE("flipped payload byte fails the CRC") {
        std::fstream f(cp.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(24);
        char c;
        f.seekg(24);
        f.get(c);
        f.seekp(24);
        f.put(static_cast<char>(c ^ 0x55));
        f.close();
        CHECK_THROWS_AS(load_checkpoint(cp.path), data_error);
    }
    SUBCASE("truncated file is rejected") {
        const auto size = std::filesystem::file_size(cp.path);
        std::filesystem::resize_file(cp.path, size / 2);
        CHECK_THROWS_AS(load_checkpoint(cp.path), data_error);
    }
    SUBCASE("bad magic is rejected") {
        std::fstream f(cp.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("XXXXX", 5);
        f.close();
        CHECK_THROWS_AS(load_checkpoint(cp.path), data_error);
    }
}

TEST_CASE("stats JSONL round trip") {
    const MertensStats st = mertens_scan(1000, 100, kWheelPeriod);
    std::ostringstream os;
    write_stats_jsonl(os, st);
    const std::string text = os.str();
    CHECK(text.find("{\"kind\":\"zero\",\"n\":2,\"M\":0}") != std::string::npos);
    CHECK(text.find("{\"kind\":\"extremum\",\"n\":1,\"M\":1}") != std::string::npos);

    std::istringstream is(text);
    const std::vector<u64> zeros = read_zero_list(is);
    CHECK(zeros == st.zeros);
    CHECK(zeros.size() == 92);

    std::istringstream plain("2 39 40\n58\n");
    CHECK(read_zero_list(plain) == std::vector<u64>{2, 39, 40, 58});
    std::istringstream bad("5 4\n");
    CHECK_THROWS_AS(read_zero_list(bad), data_error);
}
