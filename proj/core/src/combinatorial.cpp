#include "mertens/combinatorial.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <string>

#include "mertens/errors.hpp"
#include "mertens/sieve.hpp"

namespace mertens {

namespace {

constexpr u64 kDirectCutoff = 4096;
constexpr u64 kMaxIsolatedX = u64{1} << 52;

struct DivCounter {
    u64 count = 0;
    u64 div(u64 a, u64 b) {
        ++count;
        return a / b;
    }
};

// Magic reciprocals for every denominator below cbrt(2x), shared by all
// accumulators. Building an entry costs one division; evaluating costs none.
struct MagicTable {
    std::vector<MagicDivisor> table;  // index = denominator

    void build(u64 up_to, DivCounter& dc) {
        table.resize(std::max<u64>(up_to + 1, 2));
        for (u64 d = 2; d <= up_to; ++d) {
            table[d] = magic_make(d);
            ++dc.count;  // the reciprocal computation is one 128/64 division
        }
    }
    u64 div(u64 y, u64 n) const { return n <= 1 ? y : magic_div(table[n], y); }
};

// Segmented mu/M sieve over [1, u] that carries per-prime offsets between
// blocks, so a block costs no divisions after initialization.
struct SegmentedSiever {
    PrimeSet primes;
    LogTable logs;
    std::vector<u64> next_mult;  // log-add offsets for p >= 13
    std::vector<u64> next_sq;    // square-zero offsets for p >= 5
    u64 pos = 1;                 // next n to sieve
    u64 wheel_off = 1 % kWheelPeriod;
    u64 limit;

    SegmentedSiever(u64 limit_) : limit(limit_) {
        primes = primes_up_to(prime_coverage_for(limit));
        logs = make_log_table(primes);
        next_mult.resize(primes.primes.size());
        next_sq.resize(primes.primes.size());
        for (std::size_t j = 0; j < primes.primes.size(); ++j) {
            const u64 p = primes.primes[j];
            next_mult[j] = p >= 13 ? p : ~u64{0};
            next_sq[j] = p >= 5 ? p * p : ~u64{0};
        }
    }

    // Fills values with classified mu bytes for [pos, min(pos+len-1, limit)].
    // Returns the range [lo, hi], empty when done.
    std::pair<u64, u64> next_block(std::vector<u8>& values, u64 len) {
        if (pos > limit) return {1, 0};
        const u64 lo = pos;
        const u64 hi = std::min(lo + len - 1, limit);
        const u64 n = hi - lo + 1;
        values.resize(n);
        const auto& pat = presieve_wheel();
        u64 off = wheel_off;
        u64 i = 0;
        while (i < n) {
            const u64 chunk = std::min<u64>(kWheelPeriod - off, n - i);
            std::copy_n(pat.data() + off, chunk, values.data() + i);
            i += chunk;
            off = 0;
        }
        wheel_off = (wheel_off + n) % kWheelPeriod;

        u8* v = values.data();
        for (std::size_t j = 0; j < primes.primes.size(); ++j) {
            const u64 p = primes.primes[j];
            if (p > hi) break;
            if (p >= 13) {
                u64 m = next_mult[j];
                const u8 log = logs.entries[j];
                for (; m <= hi; m += p) v[m - lo] += log;
                next_mult[j] = m;
            }
            u64 s = next_sq[j];
            if (s != ~u64{0})
                for (; s <= hi; s += p * p) v[s - lo] = 0;
            next_sq[j] = s;
        }
        SieveBlock blk;
        blk.start = lo;
        blk.values = std::move(values);
        blk.phase = BlockPhase::logged;
        classify_block(blk);
        values = std::move(blk.values);
        pos = hi + 1;
        return {lo, hi};
    }
};

// Streaming accumulator for one S(y, u).
struct SAccumulator {
    u64 n0 = 0;
    int mu0 = 0;
    u64 y = 0;
    u64 nu = 0;     // isqrt(y)
    u64 kappa = 0;  // y / (nu + 1)
    u64 cbrt2y = 0;
    u64 b_end = 0;  // smallest M-side denominator: floor(y/u) + 1

    u64 next_a = 1;  // next mu index to consume
    u64 nb = 0;      // current M-side denominator (walks down)
    QuotientCursor qa{1, 1};
    QuotientCursor qb{1, 1};
    bool qa_live = false;
    bool qb_live = false;

    i128 sum_a = 0;  // sum floor(y/n) mu(n), n <= nu
    i128 sum_b = 0;  // sum M(y/n), y/u < n <= kappa
    i64 M_nu = 0;
    bool seen_nu = false;

    void init(u64 n0_, int mu0_, u64 x, u64 u, DivCounter& dc) {
        n0 = n0_;
        mu0 = mu0_;
        y = dc.div(x, n0);
        nu = isqrt(y);
        kappa = dc.div(y, nu + 1);
        cbrt2y = icbrt(static_cast<u128>(y) * 2);
        b_end = dc.div(y, u) + 1;
        nb = kappa;
        if (nb >= b_end && nb >= cbrt2y) {
            qb = QuotientCursor(y, nb);
            qb_live = true;
            dc.count += 2;
        }
    }

    // Consume one classified block [lo, hi] with its M values.
    void advance(u64 lo, u64 hi, const u8* mu_bytes, const i64* Mvals, const MagicTable& magic,
                 DivCounter& dc) {
        // mu side
        if (next_a <= nu && next_a <= hi) {
            u64 n = next_a;
            const u64 stop = std::min(nu, hi);
            // below the increment regime: magic per denominator, skipped
            // entirely when mu(n) = 0
            for (; n <= stop && n < cbrt2y; ++n) {
                const int mu = static_cast<std::int8_t>(mu_bytes[n - lo]);
                if (mu != 0) {
                    const u64 q = magic.div(y, n);
                    sum_a += static_cast<i128>(q) * mu;
                }
            }
            if (n <= stop) {
                if (!qa_live) {
                    qa = QuotientCursor(y, n);
                    qa_live = true;
                    dc.count += 2;
                }
                for (; n <= stop; ++n) {
                    const int mu = static_cast<std::int8_t>(mu_bytes[n - lo]);
                    if (mu != 0) sum_a += static_cast<i128>(qa.q()) * mu;
                    if (n < stop || n < nu) qa.step_up();
                }
            }
            next_a = n;
        }
        // M side: quotients ascend as the denominator walks down
        while (nb >= b_end) {
            u64 q;
            if (nb >= cbrt2y) {
                q = qb.q();
            } else {
                qb_live = false;
                q = magic.div(y, nb);
            }
            if (q > hi) break;
            sum_b += Mvals[q - lo];
            --nb;
            if (qb_live && nb >= cbrt2y && nb >= b_end) qb.step_down();
        }
        if (!seen_nu && nu >= lo && nu <= hi) {
            M_nu = Mvals[nu - lo];
            seen_nu = true;
        }
    }

    bool done() const { return next_a > nu && nb < b_end && seen_nu; }

    i128 s_value() const {
        return 1 - sum_b + static_cast<i128>(kappa) * M_nu - sum_a;
    }
};

i64 mertens_direct(u64 x) {
    std::vector<u8> bytes;
    SegmentedSiever siever(x);
    auto [lo, hi] = siever.next_block(bytes, x);
    i64 M = 0;
    for (u64 n = lo; n <= hi; ++n) M += static_cast<std::int8_t>(bytes[n - lo]);
    return M;
}

}  // namespace

u64 default_u(u64 x) {
    // ceil(0.5 * x^(2/3)) with an exact integer floor of x^(2/3)
    const u64 t = icbrt(static_cast<u128>(x) * x);
    u64 u = (t + 1) / 2;
    const u64 nu = isqrt(x);
    u = std::max(u, nu + 1);
    if (x > 2) u = std::min(u, x - 1);
    return u;
}

i64 compute_S(u64 y, u64 u, const MuMProvider& provider, SCounters* counters) {
    if (y < 1) throw parameter_error("compute_S: y must be >= 1");
    const u64 nu = isqrt(y);
    if (u <= nu || u >= y) throw parameter_error("compute_S: u must satisfy sqrt(y) < u < y");
    const u64 kappa = y / (nu + 1);
    const u64 b_end = y / u + 1;
    if (provider.mu_limit < nu)
        throw data_error("compute_S: mu provider covers [1, " + std::to_string(provider.mu_limit) +
                         "] but [1, " + std::to_string(nu) + "] is required");
    const u64 max_m_arg = std::max(nu, b_end <= kappa ? y / b_end : 0);
    if (provider.M_limit < max_m_arg)
        throw data_error("compute_S: M provider covers [1, " + std::to_string(provider.M_limit) +
                         "] but [1, " + std::to_string(max_m_arg) + "] is required");

    SCounters local;
    i128 sum_a = 0;
    for (u64 n = 1; n <= nu; ++n) {
        const int mu = provider.mu(n);
        if (mu == 0) continue;  // quotient never computed
        ++local.mu_quotients;
        sum_a += static_cast<i128>(y / n) * mu;
    }
    i128 sum_b = 0;
    for (u64 n = b_end; n <= kappa; ++n) {
        ++local.m_quotients;
        sum_b += provider.M(y / n);
    }
    const i128 s = 1 - sum_b + static_cast<i128>(kappa) * provider.M(nu) - sum_a;
    if (counters) *counters = local;
    return static_cast<i64>(s);
}

std::vector<u64> quotient_walk(u64 y, u64 n_lo, u64 n_hi) {
    if (y < 1 || n_lo < 1 || n_lo > n_hi) throw parameter_error("quotient_walk: bad range");
    std::vector<u64> out;
    out.reserve(n_hi - n_lo + 1);
    const u64 regime = icbrt(static_cast<u128>(y) * 2);
    u64 n = n_lo;
    for (; n <= n_hi && n < regime; ++n) out.push_back(y / n);  // plain division fallback
    if (n <= n_hi) {
        QuotientCursor cursor(y, n);
        for (;; ++n) {
            out.push_back(cursor.q());
            if (n == n_hi) break;
            cursor.step_up();
        }
    }
    return out;
}

IsolatedResult mertens_isolated(const IsolatedQuery& query) {
    const auto t0 = std::chrono::steady_clock::now();
    const u64 x = query.x;
    if (x < 1) throw parameter_error("mertens_isolated: x must be >= 1");
    if (x > kMaxIsolatedX) throw parameter_error("mertens_isolated: x exceeds 2^52");

    IsolatedResult res;
    res.x = x;
    DivCounter dc;

    if (x <= kDirectCutoff) {
        res.M = mertens_direct(x);
        if (query.nested && x >= 128) {
            res.x_nested = x / 128;
            res.M_nested = mertens_direct(res.x_nested);
        }
        res.u = x;
        res.divisions = dc.count;
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }

    const u64 nu_x = isqrt(x);
    const u64 u = query.u ? query.u : default_u(x);
    if (u <= nu_x || u >= x)
        throw parameter_error("mertens_isolated: u must satisfy sqrt(x) < u < x");
    res.u = u;

    u64 block = query.sieve_block;
    if (block == 0) {
        block = 96 * isqrt(2 * u);
        block = std::min<u64>(block, u64{1} << 22);
    }
    block = std::max<u64>(ceil_div(block, kWheelPeriod) * kWheelPeriod, kWheelPeriod);
    res.sieve_block = block;

    // outer mu values over [1, x/u]
    const u64 nmax = x / u;
    ++dc.count;
    std::vector<u8> outer_mu;
    {
        SegmentedSiever outer(nmax);
        outer.next_block(outer_mu, nmax);
    }

    const u64 x_nested = x / 128;
    const bool want_nested = query.nested && x >= 128;
    const bool nested_direct = want_nested && x_nested <= u;
    const u64 nested_nmax = (want_nested && !nested_direct) ? x_nested / u : 0;

    MagicTable magic;
    magic.build(icbrt(static_cast<u128>(x) * 2), dc);

    std::vector<SAccumulator> accs;
    accs.reserve(nmax);
    for (u64 n0 = 1; n0 <= nmax; ++n0) {
        const int mu0 = static_cast<std::int8_t>(outer_mu[n0 - 1]);
        if (mu0 == 0) continue;  // square-free outer indices only
        SAccumulator acc;
        acc.init(n0, mu0, x, u, dc);
        accs.push_back(acc);
    }
    std::vector<SAccumulator> nested_accs;
    for (u64 n0 = 1; n0 <= nested_nmax; ++n0) {
        const int mu0 = static_cast<std::int8_t>(outer_mu[n0 - 1]);
        if (mu0 == 0) continue;
        SAccumulator acc;
        acc.init(n0, mu0, x_nested, u, dc);
        nested_accs.push_back(acc);
    }

    // main sieve over [1, u], feeding every accumulator block by block
    SegmentedSiever siever(u);
    std::vector<u8> mu_bytes;
    std::vector<i64> Mvals;
    i64 M_running = 0;
    i64 M_at_nested = 0;
    const unsigned T = std::max(1u, query.threads);
    while (true) {
        auto [lo, hi] = siever.next_block(mu_bytes, block);
        if (lo > hi) break;
        Mvals.resize(hi - lo + 1);
        i64 M = M_running;
        for (u64 i = 0; i <= hi - lo; ++i) {
            M += static_cast<std::int8_t>(mu_bytes[i]);
            Mvals[i] = M;
        }
        M_running = M;
        if (nested_direct && x_nested >= lo && x_nested <= hi) M_at_nested = Mvals[x_nested - lo];

        auto run_shard = [&](std::vector<SAccumulator>& v, std::size_t shard, std::size_t nshards) {
            DivCounter local;
            for (std::size_t i = shard; i < v.size(); i += nshards)
                v[i].advance(lo, hi, mu_bytes.data(), Mvals.data(), magic, local);
            return local.count;
        };
        if (T == 1 || accs.size() < 64) {
            dc.count += run_shard(accs, 0, 1);
            dc.count += run_shard(nested_accs, 0, 1);
        } else {
            std::vector<std::future<u64>> futs;
            for (unsigned s = 1; s < T; ++s)
                futs.push_back(std::async(std::launch::async, run_shard, std::ref(accs), s, T));
            dc.count += run_shard(accs, 0, T);
            for (auto& f : futs) dc.count += f.get();
            dc.count += run_shard(nested_accs, 0, 1);
        }
    }

    auto combine = [&](const std::vector<SAccumulator>& v, u64 top) -> i64 {
        i128 total = 0;
        for (const auto& acc : v) {
            if (!acc.done())
                throw data_error("mertens_isolated: accumulator for n0=" + std::to_string(acc.n0) +
                                 " incomplete after sieving to u");
            total += static_cast<i128>(acc.mu0) * acc.s_value();
        }
        const i128 bound = static_cast<i128>(top);
        if (total > bound || total < -bound)
            throw data_error("mertens_isolated: result out of range");
        return static_cast<i64>(total);
    };
    res.M = combine(accs, x);
    if (want_nested) {
        res.x_nested = x_nested;
        res.M_nested = nested_direct ? M_at_nested : combine(nested_accs, x_nested);
    }
    res.divisions = dc.count;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace mertens
