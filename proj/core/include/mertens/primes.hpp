#pragma once

#include <vector>

#include "mertens/arith.hpp"

namespace mertens {

/// Primes up to and including `covered_to`, kept together with the coverage
/// bound so sieve preconditions can be validated.
struct PrimeSet {
    std::vector<u32> primes;
    u64 covered_to = 0;
};

PrimeSet primes_up_to(u64 limit);

/// Per-prime byte table: entries[j] = floor(log2 p_j) | 1. Forcing the low
/// bit makes every entry odd, so summing entries counts prime-factor parity
/// in the least significant bit of the accumulator.
struct LogTable {
    std::vector<u8> entries;
};

LogTable make_log_table(const PrimeSet& ps);

}  // namespace mertens
