#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/sieve.hpp"

namespace mertens {

// Default scan block: 4096 wheel periods (~56.8 MB of sieve bytes).
inline constexpr u64 kDefaultBlockLen = kWheelPeriod * 4096;
// Block length used by very large scans (a wheel multiple sized for tens of
// GB of RAM); kept as a named preset.
inline constexpr u64 kLargeScanBlockLen = 8'728'473'600ull;

/// Streamed record of a full M(n) scan: every running extremum, every zero,
/// and samples at a fixed stride.
struct MertensStats {
    std::vector<std::pair<u64, i64>> extrema;
    std::vector<u64> zeros;
    std::vector<std::pair<u64, i64>> samples;
    struct Running {
        u64 n = 0;
        i64 M = 0;
        i64 max = 0;
        i64 min = 0;
        bool operator==(const Running&) const = default;
    } running;
    bool operator==(const MertensStats&) const = default;
};

struct ScanConfig {
    u64 limit = 0;
    u64 block_len = kDefaultBlockLen;  // must be a multiple of the wheel period
    u64 stride = 100'000'000;          // sample stride
    bool bucketed = false;
    unsigned threads = 1;
    std::string checkpoint_path;  // empty: no checkpointing
    u64 checkpoint_every = 64;    // blocks between checkpoint writes
    u64 stop_after_blocks = 0;    // nonzero: stop early after that many blocks
};

/// Scan M(n) for n = 1..limit. If a checkpoint file exists at
/// checkpoint_path the scan resumes from it (the stored config hash must
/// match). Returns complete stats; running.M is M(limit).
MertensStats mertens_scan(const ScanConfig& config);

MertensStats mertens_scan(u64 limit, u64 stride = 100'000'000, u64 block_len = kDefaultBlockLen);

/// Same scan driven by a block-indexed prime schedule: a prime sits in the
/// bucket of the next block containing one of its unprocessed multiples, so
/// primes larger than the block length are touched only where they act.
/// Produces stats identical to mertens_scan.
MertensStats bucket_scan(u64 limit, u64 block_len = kDefaultBlockLen, u64 stride = 100'000'000);

u32 scan_config_hash(const ScanConfig& config);

}  // namespace mertens
