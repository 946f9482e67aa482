#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/errors.hpp"

namespace mertens {

/// Exact fraction with a positive denominator, reduced.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    static Rational make(i64 num, i64 den);
    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational&) const = default;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Strictly increasing zeros of M(n), recorded by a scan up to source_limit.
struct ZeroList {
    std::vector<u64> zeros;
    u64 source_limit = 0;
};

ZeroList make_zero_list(std::vector<u64> zeros, u64 source_limit);

/// V(x): number of zeros strictly below x. x must not exceed the source
/// limit of the list.
u64 count_zeros(const ZeroList& zeros, u64 x);

/// Exact M+(x) = #{n <= x : M(n) > 0} / x, reconstructed from the zero list
/// alone: between consecutive zeros the sign of M is constant and equals
/// mu(z+1) at the departing zero z. mu_of must answer for z+1 of every zero
/// below x.
Rational positivity(const ZeroList& zeros, const std::function<int(u64)>& mu_of, u64 x);

struct GapHistogram {
    std::map<u64, u64> counts;  // gap length -> occurrences
    u64 m = 0;                  // zeros considered
};

/// Histogram of consecutive differences among the first m zeros.
GapHistogram gap_histogram(std::span<const u64> zeros, u64 m);

/// Multiplier of the gap band for gap length g: with
/// P_g = {p prime : p^2 <= g and g == 1 (mod p^2)}, the subset-sum
///   sum_{S subset of P_g} prod_{p in S} 1/(p^2 - 2)
/// which is checked against the closed form prod_{p in P_g} (1 + 1/(p^2-2)).
Rational band_multiplier(u64 g);

/// Primes of the band multiplier set P_g.
std::vector<u64> band_prime_set(u64 g);

}  // namespace mertens
