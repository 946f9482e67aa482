#include "mertens/zero_stats.hpp"

#include <algorithm>
#include <numeric>

#include "mertens/primes.hpp"

namespace mertens {

Rational Rational::make(i64 num, i64 den) {
    if (den == 0) throw parameter_error("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

Rational Rational::operator+(const Rational& o) const {
    const i128 n = static_cast<i128>(num) * o.den + static_cast<i128>(o.num) * den;
    const i128 d = static_cast<i128>(den) * o.den;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw data_error("rational overflow");
    return make(static_cast<i64>(n), static_cast<i64>(d));
}

Rational Rational::operator*(const Rational& o) const {
    const i128 n = static_cast<i128>(num) * o.num;
    const i128 d = static_cast<i128>(den) * o.den;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw data_error("rational overflow");
    return make(static_cast<i64>(n), static_cast<i64>(d));
}

ZeroList make_zero_list(std::vector<u64> zeros, u64 source_limit) {
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (i > 0 && zeros[i] <= zeros[i - 1])
            throw data_error("zero list: not strictly increasing");
        if (zeros[i] > source_limit)
            throw data_error("zero list: entry beyond the source limit");
    }
    if (!zeros.empty() && zeros.front() < 2) throw data_error("zero list: first zero below 2");
    return ZeroList{std::move(zeros), source_limit};
}

u64 count_zeros(const ZeroList& zeros, u64 x) {
    if (x > zeros.source_limit)
        throw parameter_error("count_zeros: x exceeds the zero list's source limit");
    return static_cast<u64>(std::lower_bound(zeros.zeros.begin(), zeros.zeros.end(), x) -
                            zeros.zeros.begin());
}

Rational positivity(const ZeroList& zeros, const std::function<int(u64)>& mu_of, u64 x) {
    if (x > zeros.source_limit)
        throw parameter_error("positivity: x exceeds the zero list's source limit");
    if (x == 0) throw parameter_error("positivity: x must be >= 1");
    // M(n) != 0 between consecutive zeros, so the sign is constant there and
    // changes only by stepping through a zero. Before the first zero the
    // sign is that of M(1) = +1.
    u64 positives = 0;
    u64 segment_start = 1;  // first n of the current nonzero segment
    int sign = 1;
    for (u64 z : zeros.zeros) {
        if (z > x) break;
        if (segment_start <= std::min(z - 1, x) && sign > 0)
            positives += std::min(z - 1, x) - segment_start + 1;
        if (z >= x) {
            segment_start = x + 1;  // nothing after
            break;
        }
        // sign after the zero: mu(z+1); zero gaps of length one keep M at 0
        const int mu = mu_of(z + 1);
        sign = mu;  // mu = 0 means z+1 is itself a zero; the loop handles it
        segment_start = z + 1;
    }
    if (segment_start <= x && sign > 0) positives += x - segment_start + 1;
    return Rational::make(static_cast<i64>(positives), static_cast<i64>(x));
}

GapHistogram gap_histogram(std::span<const u64> zeros, u64 m) {
    if (m > zeros.size()) throw parameter_error("gap_histogram: m exceeds the zero count");
    GapHistogram h;
    h.m = m;
    for (u64 i = 1; i < m; ++i) ++h.counts[zeros[i] - zeros[i - 1]];
    return h;
}

std::vector<u64> band_prime_set(u64 g) {
    std::vector<u64> ps;
    for (u64 p = 2; p * p <= g; ++p) {
        bool prime = true;
        for (u64 d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (prime && g % (p * p) == 1) ps.push_back(p);
    }
    return ps;
}

Rational band_multiplier(u64 g) {
    if (g < 1) throw parameter_error("band_multiplier: g must be >= 1");
    const std::vector<u64> ps = band_prime_set(g);
    if (ps.size() > 20) throw data_error("band_multiplier: prime set too large");

    // subset-sum form
    Rational subset_sum{0, 1};
    for (u64 mask = 0; mask < (u64{1} << ps.size()); ++mask) {
        Rational term{1, 1};
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask & (u64{1} << i))
                term = term * Rational::make(1, static_cast<i64>(ps[i] * ps[i] - 2));
        subset_sum = subset_sum + term;
    }
    // closed product form; the two must agree identically
    Rational product{1, 1};
    for (u64 p : ps)
        product = product * Rational::make(static_cast<i64>(p * p - 1), static_cast<i64>(p * p - 2));
    if (!(subset_sum == product)) throw data_error("band_multiplier: identity violated");
    return subset_sum;
}

}  // namespace mertens
