#include "mertens/primes.hpp"

#include "mertens/errors.hpp"

namespace mertens {

PrimeSet primes_up_to(u64 limit) {
    if (limit >= (u64{1} << 32))
        throw parameter_error("primes_up_to: limit must fit in 32 bits");
    PrimeSet ps;
    ps.covered_to = limit;
    if (limit < 2) return ps;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) ps.primes.push_back(static_cast<u32>(i));
    return ps;
}

LogTable make_log_table(const PrimeSet& ps) {
    LogTable lt;
    lt.entries.reserve(ps.primes.size());
    for (u32 p : ps.primes)
        lt.entries.push_back(static_cast<u8>(floor_log2(p) | 1));
    return lt;
}

}  // namespace mertens
