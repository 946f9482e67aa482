#pragma once

#include "mertens/arith.hpp"
#include "mertens/errors.hpp"

namespace mertens {

// Precomputed multiply/add/shift constants replacing floor(n/d).
//
// mul:add is the 128-bit reciprocal ceil(2^128 / d) split into high and low
// 64-bit words. The evaluation is one widening multiply per word, one
// addition combining the partial products, and two right shifts (the
// implicit >>64 of the high product and the final >>shift). The result is
// exact for every unsigned 64-bit numerator: the reciprocal error e = mul:add
// * d - 2^128 satisfies 0 < e <= d, so the error term n*e/2^128 stays below
// 2^-64 <= 1/d and can never push the quotient past the next integer.
struct MagicDivisor {
    u64 d = 0;
    u64 mul = 0;        // high word of ceil(2^128 / d)
    u64 add = 0;        // low word of ceil(2^128 / d)
    unsigned shift = 0;  // final shift of the high product word
};

inline MagicDivisor magic_make(u64 d) {
    if (d < 2 || d >= (u64{1} << 63))
        throw parameter_error("magic_make: divisor must satisfy 2 <= d < 2^63");
    u128 rec = ~u128{0} / d + 1;  // ceil(2^128 / d) for d >= 2
    return MagicDivisor{d, static_cast<u64>(rec >> 64), static_cast<u64>(rec), 64};
}

/// Exact floor(n/d) for any 64-bit n.
inline u64 magic_div(const MagicDivisor& md, u64 n) {
    u128 hi = static_cast<u128>(n) * md.mul;
    u128 lo = static_cast<u128>(n) * md.add;
    return static_cast<u64>((hi + (lo >> 64)) >> md.shift);
}

}  // namespace mertens
