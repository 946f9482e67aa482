#include "mertens/sieve.hpp"

#include <algorithm>
#include <string>

namespace mertens {

namespace {

u64 first_multiple(u64 lo, u64 p) {
    return ceil_div(lo, p) * p;
}

int floor_log2_u128(u128 v) {
    const u64 hi = static_cast<u64>(v >> 64);
    if (hi) return 64 + floor_log2(hi);
    return floor_log2(static_cast<u64>(v));
}

}  // namespace

const std::array<u8, kWheelPeriod>& presieve_wheel() {
    static const std::array<u8, kWheelPeriod> pattern = [] {
        std::array<u8, kWheelPeriod> pat{};
        pat.fill(kSquareFreeBit);
        constexpr struct {
            u32 p;
            u8 log;
        } small[] = {{2, 1}, {3, 1}, {5, 3}, {7, 3}, {11, 3}};
        for (auto [p, log] : small)
            for (u64 r = 0; r < kWheelPeriod; r += p) pat[r] += log;
        for (u64 r = 0; r < kWheelPeriod; r += 4) pat[r] = 0;
        for (u64 r = 0; r < kWheelPeriod; r += 9) pat[r] = 0;
        return pat;
    }();
    return pattern;
}

SieveBlock make_raw_block(u64 start, u64 length) {
    if (start < 1) throw parameter_error("make_raw_block: start must be >= 1");
    SieveBlock block;
    block.start = start;
    block.values.resize(length);
    const auto& pat = presieve_wheel();
    u64 off = start % kWheelPeriod;
    u64 i = 0;
    while (i < length) {
        const u64 chunk = std::min<u64>(kWheelPeriod - off, length - i);
        std::copy_n(pat.data() + off, chunk, block.values.data() + i);
        i += chunk;
        off = 0;
    }
    return block;
}

void sieve_block(SieveBlock& block, const LogTable& logs, const PrimeSet& primes) {
    if (block.phase != BlockPhase::raw)
        throw parameter_error("sieve_block: block is not in raw phase");
    if (logs.entries.size() != primes.primes.size())
        throw parameter_error("sieve_block: log table does not match prime set");
    const u64 lo = block.start;
    const u64 hi = block.end();
    const u64 coverage = prime_coverage_for(hi);
    if (primes.covered_to < coverage)
        throw parameter_error("sieve_block: primes cover " + std::to_string(primes.covered_to) +
                              " but coverage up to " + std::to_string(coverage) +
                              " is required for a block ending at " + std::to_string(hi));
    u8* v = block.values.data();

    // Squares of the wheel primes are not periodic mod 13860.
    for (u64 sq : {u64{25}, u64{49}, u64{121}})
        for (u64 m = first_multiple(lo, sq); m <= hi; m += sq) v[m - lo] = 0;

    for (std::size_t j = 0; j < primes.primes.size(); ++j) {
        const u64 p = primes.primes[j];
        if (p > coverage) break;
        if (p <= 11) continue;  // logs handled by the wheel
        const u8 log = logs.entries[j];
        for (u64 m = first_multiple(lo, p); m <= hi; m += p) v[m - lo] += log;
        const u64 pp = p * p;
        if (pp <= hi)
            for (u64 m = first_multiple(lo, pp); m <= hi; m += pp) v[m - lo] = 0;
    }
    block.phase = BlockPhase::logged;
}

void classify_block(SieveBlock& block) {
    if (block.phase != BlockPhase::logged)
        throw parameter_error("classify_block: block is not in logged phase");
    if (block.end() > kClassifyLimit)
        throw parameter_error("classify_block: block exceeds validated range");
    u8* v = block.values.data();
    const u64 lo = block.start;
    u64 n = lo;
    const u64 last = block.end();
    // The threshold is constant between consecutive powers of two (plus the
    // step at 2^20), so classify in runs with a fixed threshold.
    while (n <= last) {
        const int lg = floor_log2(n);
        u64 seg_end = last;
        if (lg < 63) seg_end = std::min(seg_end, (u64{1} << (lg + 1)) - 1);
        if (n <= (u64{1} << 20)) seg_end = std::min(seg_end, u64{1} << 20);
        const int threshold = lg - 5 - 2 * (n > (u64{1} << 20));
        for (u64 m = n; m <= seg_end; ++m) {
            const u8 b = v[m - lo];
            int mu = 0;
            if (b & kSquareFreeBit) {
                const int lsb = b & 1;
                mu = (static_cast<int>(b & 0x7f) < threshold) ? 2 * lsb - 1 : 1 - 2 * lsb;
            }
            v[m - lo] = static_cast<u8>(static_cast<std::int8_t>(mu));
        }
        n = seg_end + 1;
    }
    block.phase = BlockPhase::classified;
}

int theorem1_margin(std::span<const u64> distinct_primes) {
    if (distinct_primes.empty()) return 0;  // n = 1
    int log_sum = 0;
    u128 product = 1;
    for (u64 p : distinct_primes) {
        log_sum += floor_log2(p) | 1;
        if (product > ~u128{0} / p)
            throw parameter_error("theorem1_margin: prime product overflows 128 bits");
        product *= p;
    }
    return log_sum - floor_log2_u128(product);
}

}  // namespace mertens
