#include "mertens/scan.hpp"

#include <cstdlib>
#include <deque>
#include <filesystem>
#include <future>
#include <unordered_map>

#include "mertens/checkpoint.hpp"
#include "mertens/errors.hpp"

namespace mertens {

namespace {

void validate(const ScanConfig& c) {
    if (c.limit < 1) throw parameter_error("scan: limit must be >= 1");
    if (c.limit > kClassifyLimit) throw parameter_error("scan: limit exceeds validated range");
    if (c.block_len == 0 || c.block_len % kWheelPeriod != 0)
        throw parameter_error("scan: block_len must be a positive multiple of 13860");
    if (c.stride == 0) throw parameter_error("scan: stride must be positive");
}

u64 first_multiple(u64 lo, u64 step) {
    return ceil_div(lo, step) * step;
}

struct Accumulator {
    MertensStats stats;
    u64 stride = 0;
    u64 next_sample = 0;

    void sync_next_sample() { next_sample = (stats.running.n / stride + 1) * stride; }

    void consume(u64 lo, const std::vector<u8>& mu_bytes, u64 limit) {
        i64 M = stats.running.M;
        i64 mx = stats.running.max;
        i64 mn = stats.running.min;
        const u64 count = mu_bytes.size();
        for (u64 i = 0; i < count; ++i) {
            const u64 n = lo + i;
            M += static_cast<std::int8_t>(mu_bytes[i]);
            if (M > mx) {
                mx = M;
                stats.extrema.emplace_back(n, M);
            } else if (M < mn) {
                mn = M;
                stats.extrema.emplace_back(n, M);
            }
            if (M == 0) stats.zeros.push_back(n);
            if (n == next_sample) {
                stats.samples.emplace_back(n, M);
                next_sample += stride;
            }
        }
        stats.running.n = lo + count - 1;
        stats.running.M = M;
        stats.running.max = mx;
        stats.running.min = mn;
        // |M(n)| < n makes overflow impossible below the validated range.
        if (stats.running.M > static_cast<i64>(limit) || -stats.running.M > static_cast<i64>(limit))
            throw data_error("scan: accumulator out of range");
    }
};

struct Engine {
    ScanConfig cfg;
    u32 hash = 0;
    u64 nblocks = 0;
    u64 first_block = 0;
    Accumulator acc;

    explicit Engine(const ScanConfig& c) : cfg(c) {
        validate(cfg);
        hash = scan_config_hash(cfg);
        nblocks = ceil_div(cfg.limit, cfg.block_len);
        if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path)) {
            Checkpoint cp = load_checkpoint(cfg.checkpoint_path);
            if (cp.config_hash != hash)
                throw data_error("scan: checkpoint was written under a different configuration");
            first_block = cp.next_block;
            acc.stats = std::move(cp.stats);
        }
        acc.stride = cfg.stride;
        acc.sync_next_sample();
    }

    std::pair<u64, u64> block_range(u64 bi) const {
        const u64 lo = bi * cfg.block_len + 1;
        const u64 hi = std::min(lo + cfg.block_len - 1, cfg.limit);
        return {lo, hi};
    }

    void write_checkpoint(u64 next_block) const {
        save_checkpoint(cfg.checkpoint_path, Checkpoint{hash, cfg.limit, next_block, acc.stats});
    }

    // Returns true when the scan should stop early (test hook for resume).
    bool after_block(u64 bi, u64 done) {
        const bool last = bi + 1 == nblocks;
        if (!cfg.checkpoint_path.empty() &&
            (last || (cfg.checkpoint_every && (done % cfg.checkpoint_every == 0))))
            write_checkpoint(bi + 1);
        if (cfg.stop_after_blocks && done >= cfg.stop_after_blocks && !last) {
            if (cfg.checkpoint_path.empty())
                throw parameter_error("scan: stop_after_blocks requires a checkpoint path");
            write_checkpoint(bi + 1);
            return true;
        }
        return false;
    }
};

MertensStats scan_plain(Engine& eng) {
    const ScanConfig& cfg = eng.cfg;
    const PrimeSet primes = primes_up_to(prime_coverage_for(cfg.limit));
    const LogTable logs = make_log_table(primes);

    auto produce = [&](u64 bi) {
        auto [lo, hi] = eng.block_range(bi);
        SieveBlock blk = make_raw_block(lo, hi - lo + 1);
        sieve_block(blk, logs, primes);
        classify_block(blk);
        return blk;
    };

    const unsigned T = std::max(1u, cfg.threads);
    std::deque<std::future<SieveBlock>> window;
    u64 scheduled = eng.first_block;
    auto fill = [&] {
        while (scheduled < eng.nblocks && window.size() < T)
            window.push_back(std::async(std::launch::async, produce, scheduled++));
    };

    u64 done = 0;
    for (u64 bi = eng.first_block; bi < eng.nblocks; ++bi) {
        fill();
        SieveBlock blk = window.front().get();
        window.pop_front();
        fill();
        eng.acc.consume(blk.start, blk.values, cfg.limit);
        if (eng.after_block(bi, ++done)) return eng.acc.stats;
    }
    return eng.acc.stats;
}

MertensStats scan_bucketed(Engine& eng) {
    const ScanConfig& cfg = eng.cfg;
    const PrimeSet primes = primes_up_to(prime_coverage_for(cfg.limit));
    const LogTable logs = make_log_table(primes);

    struct Event {
        u64 step;  // p for log passes, p^2 for square passes
        u64 next;  // next unprocessed multiple
        u8 log;    // 0 for square passes
    };
    std::unordered_map<u64, std::vector<Event>> buckets;
    const u64 resume_lo = eng.first_block * cfg.block_len + 1;
    auto block_of = [&](u64 n) { return (n - 1) / cfg.block_len; };
    auto push = [&](Event ev) { buckets[block_of(ev.next)].push_back(ev); };

    for (std::size_t j = 0; j < primes.primes.size(); ++j) {
        const u64 p = primes.primes[j];
        if (p >= 13) {
            const u64 next = std::max(p, first_multiple(resume_lo, p));
            if (next <= cfg.limit) push(Event{p, next, logs.entries[j]});
        }
        if (p >= 5) {
            const u64 sq = p * p;
            const u64 next = std::max(sq, first_multiple(resume_lo, sq));
            if (next <= cfg.limit) push(Event{sq, next, 0});
        }
    }

    u64 done = 0;
    for (u64 bi = eng.first_block; bi < eng.nblocks; ++bi) {
        auto [lo, hi] = eng.block_range(bi);
        SieveBlock blk = make_raw_block(lo, hi - lo + 1);
        u8* v = blk.values.data();
        if (auto it = buckets.find(bi); it != buckets.end()) {
            for (Event ev : it->second) {
                u64 m = ev.next;
                if (ev.log) {
                    for (; m <= hi; m += ev.step) v[m - lo] += ev.log;
                } else {
                    for (; m <= hi; m += ev.step) v[m - lo] = 0;
                }
                ev.next = m;
                if (ev.next <= cfg.limit) {
                    // Reinsertion always targets a later block.
                    if (block_of(ev.next) <= bi)
                        throw data_error("bucket_scan: schedule invariant violated");
                    push(ev);
                }
            }
            buckets.erase(bi);
        }
        blk.phase = BlockPhase::logged;
        classify_block(blk);
        eng.acc.consume(blk.start, blk.values, cfg.limit);
        if (eng.after_block(bi, ++done)) return eng.acc.stats;
    }
    return eng.acc.stats;
}

}  // namespace

u32 scan_config_hash(const ScanConfig& c) {
    u32 h = 2166136261u;
    auto mix = [&h](u64 v) {
        for (int i = 0; i < 8; ++i) {
            h ^= static_cast<u32>((v >> (8 * i)) & 0xff);
            h *= 16777619u;
        }
    };
    mix(c.limit);
    mix(c.block_len);
    mix(c.stride);
    mix(c.bucketed ? 1 : 0);
    return h;
}

MertensStats mertens_scan(const ScanConfig& config) {
    Engine eng(config);
    return config.bucketed ? scan_bucketed(eng) : scan_plain(eng);
}

MertensStats mertens_scan(u64 limit, u64 stride, u64 block_len) {
    ScanConfig c;
    c.limit = limit;
    c.stride = stride;
    c.block_len = block_len;
    return mertens_scan(c);
}

MertensStats bucket_scan(u64 limit, u64 block_len, u64 stride) {
    ScanConfig c;
    c.limit = limit;
    c.stride = stride;
    c.block_len = block_len;
    c.bucketed = true;
    return mertens_scan(c);
}

}  // namespace mertens
