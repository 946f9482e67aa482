#pragma once

#include <functional>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/magic.hpp"

namespace mertens {

/// One isolated M(x) evaluation. u defaults to ceil(0.5 * x^(2/3)), the
/// sieve block to min(96 * sqrt(2u), 2^22) rounded up to a wheel multiple.
struct IsolatedQuery {
    u64 x = 0;
    u64 u = 0;            // 0 = default
    u64 sieve_block = 0;  // 0 = default
    bool nested = false;  // also compute M(x/128) from the same sieve pass
    unsigned threads = 1;
};

struct IsolatedResult {
    u64 x = 0;
    i64 M = 0;
    u64 u = 0;
    u64 sieve_block = 0;
    u64 x_nested = 0;   // x / 128 when requested
    i64 M_nested = 0;
    u64 divisions = 0;  // hardware divisions spent in the call
    double seconds = 0.0;
};

u64 default_u(u64 x);

/// M(x) in O(x^(2/3+eps)) time: a segmented sieve to u feeds partial-sum
/// accumulators for every square-free n <= x/u, and M(x) is the weighted sum
/// of those accumulators.
IsolatedResult mertens_isolated(const IsolatedQuery& query);

inline IsolatedResult mertens_isolated(u64 x) {
    return mertens_isolated(IsolatedQuery{.x = x});
}

/// mu/M provider for the direct (non-streamed) S evaluation. Limits name
/// the ranges the callbacks can serve.
struct MuMProvider {
    std::function<int(u64)> mu;
    std::function<i64(u64)> M;
    u64 mu_limit = 0;
    u64 M_limit = 0;
};

struct SCounters {
    u64 mu_quotients = 0;  // quotients computed on the mu side (skips mu = 0)
    u64 m_quotients = 0;   // quotients computed on the M side
};

/// Direct evaluation of
///   S(y,u) = 1 - sum_{y/u < n <= kappa_y} M(y/n) + kappa_y M(nu_y)
///            - sum_{n <= nu_y} floor(y/n) mu(n).
i64 compute_S(u64 y, u64 u, const MuMProvider& provider, SCounters* counters = nullptr);

/// Successive quotients floor(y/n) for n in [n_lo, n_hi], computed without a
/// division per step: predicted-delta stepping in the regime n >= cbrt(2y),
/// magic multiplication below it.
std::vector<u64> quotient_walk(u64 y, u64 n_lo, u64 n_hi);

// Quotient cursor: maintains q = floor(y/n) exactly while n moves by +-1.
// In the regime n >= cbrt(2y) the second difference of y/n is below 1, so
// the next quotient is predicted from the previous delta and corrected by
// O(1) boundary adjustments, Bresenham style.
class QuotientCursor {
  public:
    QuotientCursor(u64 y, u64 n) : y_(y), n_(n), q_(y / n), r_(y - q_ * n), dq_(q_ / n) {}

    u64 n() const { return n_; }
    u64 q() const { return q_; }

    void step_down() {  // n -> n-1, q grows
        const u64 n1 = n_ - 1;
        u64 q1 = q_ + dq_;
        i64 r1 = static_cast<i64>(r_) + static_cast<i64>(q_) - static_cast<i64>(dq_) * static_cast<i64>(n1);
        while (r1 < 0) {
            --q1;
            r1 += static_cast<i64>(n1);
        }
        while (r1 >= static_cast<i64>(n1)) {
            ++q1;
            r1 -= static_cast<i64>(n1);
        }
        dq_ = q1 - q_;
        n_ = n1;
        q_ = q1;
        r_ = static_cast<u64>(r1);
    }

    void step_up() {  // n -> n+1, q shrinks
        const u64 n1 = n_ + 1;
        u64 q1 = q_ - dq_;
        i64 r1 = static_cast<i64>(r_) - static_cast<i64>(q_) + static_cast<i64>(dq_) * static_cast<i64>(n1);
        while (r1 < 0) {
            --q1;
            r1 += static_cast<i64>(n1);
        }
        while (r1 >= static_cast<i64>(n1)) {
            ++q1;
            r1 -= static_cast<i64>(n1);
        }
        dq_ = q_ - q1;
        n_ = n1;
        q_ = q1;
        r_ = static_cast<u64>(r1);
    }

  private:
    u64 y_;
    u64 n_;
    u64 q_;
    u64 r_;   // y - q*n
    u64 dq_;  // last |delta q|
};

}  // namespace mertens
