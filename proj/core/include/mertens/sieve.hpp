#pragma once

#include <array>
#include <span>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/errors.hpp"
#include "mertens/primes.hpp"

namespace mertens {

// Pre-sieve wheel period: 2 * 2 * 3 * 3 * 5 * 7 * 11.
inline constexpr u64 kWheelPeriod = 13860;
inline constexpr u8 kSquareFreeBit = 0x80;

// Hard validity ceiling for byte classification. The log-sum threshold test
// is backed by an exhaustive check below 2^20 and a deviation bound of -7
// above it; the first -8 deviation appears near 1.16e18, so 10^16 is
// enforced as a conservative hard limit.
inline constexpr u64 kClassifyLimit = 10'000'000'000'000'000ull;

enum class BlockPhase { raw, logged, classified };

// One segment of the byte sieve over [start, start + values.size() - 1].
//
// Byte layout: bit 7 = still-square-free flag, bits 0..6 accumulate the
// forced-odd prime logs (so bit 0 carries prime-count parity). After
// classification each byte holds mu(n) as a signed int8.
struct SieveBlock {
    u64 start = 1;
    std::vector<u8> values;
    BlockPhase phase = BlockPhase::raw;

    u64 size() const { return values.size(); }
    u64 end() const { return start + values.size() - 1; }  // inclusive
};

/// Sieve state of one wheel period after applying primes 2,3,5,7,11 and the
/// squares 4 and 9. Index r corresponds to n == r (mod 13860).
const std::array<u8, kWheelPeriod>& presieve_wheel();

// Prime coverage required to sieve a range ending at block_end. sqrt(end)
// alone is not sound for small ranges: the threshold test only detects a
// missing prime factor q when the partial log sum drops below
// floor(log2 n) - 5, which is guaranteed (and exhaustively checked) for
// q > 1024 but fails for e.g. prime n in (sqrt(end), 64). The floor makes
// every n <= 2^20 either fully sieved or missing a factor > 1024.
inline u64 prime_coverage_for(u64 block_end) {
    return std::min(block_end, std::max(isqrt(block_end), u64{1024}));
}

/// Wheel-tiled raw block over [start, start+length-1].
SieveBlock make_raw_block(u64 start, u64 length);

/// Apply log-additions and square-zeroing for all primes <= sqrt(block end).
/// The wheel primes' logs are already present; only their non-periodic
/// squares (25, 49, 121) and primes >= 13 are touched here.
void sieve_block(SieveBlock& block, const LogTable& logs, const PrimeSet& primes);

/// Decode one logged byte to mu(n).
inline int classify(u8 value, u64 n) {
    if (n == 0 || n > kClassifyLimit)
        throw parameter_error("classify: n outside validated range [1, 10^16]");
    if (!(value & kSquareFreeBit)) return 0;
    const int logsum = value & 0x7f;
    const int threshold = floor_log2(n) - 5 - 2 * (n > (u64{1} << 20));
    const int lsb = value & 1;
    if (logsum < threshold) return 2 * lsb - 1;  // unseen factor > sqrt(n) flips parity
    return 1 - 2 * lsb;
}

/// logged -> classified, in place.
void classify_block(SieveBlock& block);

/// mu(n) for a classified block, n within [start, end].
inline int mu_at(const SieveBlock& block, u64 n) {
    return static_cast<std::int8_t>(block.values[n - block.start]);
}

/// Sum of forced-odd logs minus floor(log2) of the product, for distinct
/// primes. Callers assert >= -7 for products up to 10^16 and >= -5 below
/// 2^20.
int theorem1_margin(std::span<const u64> distinct_primes);

}  // namespace mertens
