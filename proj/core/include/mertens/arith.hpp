#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

namespace mertens {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// floor(log2(n)) for n >= 1.
inline int floor_log2(u64 n) {
    return 63 - std::countl_zero(n);
}

/// Exact floor(sqrt(n)).
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

/// Exact floor(cbrt(n)). Callers keep n <= 2^126 so the correction
/// steps cannot overflow.
inline u64 icbrt(u128 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline u64 ceil_div(u64 a, u64 b) {
    return a / b + (a % b != 0);
}

}  // namespace mertens
