#include <random>

#include "doctest.h"
#include "mertens/combinatorial.hpp"
#include "mertens/errors.hpp"
#include "mertens/scan.hpp"
#include "oracles.hpp"

using namespace mertens;

namespace {

MuMProvider table_provider(const std::vector<std::int8_t>& mu, const std::vector<i64>& M) {
    MuMProvider p;
    p.mu = [&mu](u64 n) { return static_cast<int>(mu[n]); };
    p.M = [&M](u64 m) { return M[m]; };
    p.mu_limit = mu.size() - 1;
    p.M_limit = M.size() - 1;
    return p;
}

}  // namespace

TEST_CASE("quotient cursor stays exact while stepping") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        const u64 y = 1 + rng() % 1'000'000'000ull;
        const u64 regime = icbrt(static_cast<u128>(y) * 2);
        const u64 top = isqrt(y) + 2;
        if (top <= regime + 2) continue;
        QuotientCursor down(y, top);
        for (u64 n = top; n > regime; --n) {
            REQUIRE(down.q() == y / n);
            down.step_down();
        }
        QuotientCursor up(y, regime + 1);
        for (u64 n = regime + 1; n < top; ++n) {
            REQUIRE(up.q() == y / n);
            up.step_up();
        }
    }
}

TEST_CASE("quotient walk equals direct division") {
    const auto walk = quotient_walk(1'000'000, 126, 1000);
    for (u64 n = 126; n <= 1000; ++n) REQUIRE(walk[n - 126] == 1'000'000 / n);

    CHECK(quotient_walk(100, 10, 10) == std::vector<u64>{10});

    // exhaustive below 2*10^4, dense samples up to 10^5, spot windows above
    for (u64 y = 1; y <= 20'000; y += 1)
        if (y % 7 == 0 || y <= 3000) {
            const auto qs = quotient_walk(y, 1, y);
            for (u64 n = 1; n <= y; ++n) {
                if (qs[n - 1] != y / n) {
                    CAPTURE(y);
                    CAPTURE(n);
                    REQUIRE(qs[n - 1] == y / n);
                }
            }
        }
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        const u64 y = 20'000 + rng() % 999'980'000ull;
        const u64 lo = 1 + rng() % isqrt(y);
        const u64 hi = std::min(y, lo + 5000);
        const auto qs = quotient_walk(y, lo, hi);
        for (u64 n = lo; n <= hi; ++n) REQUIRE(qs[n - lo] == y / n);
    }
}

TEST_CASE("compute_S hand example and brute-force identity") {
    const u64 table_limit = 1000;
    const auto mu = oracle::mu_table(table_limit);
    const auto M = oracle::mertens_table(table_limit);
    const MuMProvider provider = table_provider(mu, M);

    // y = 4, u = 3: S = 1 + kappa*M(2) - (4 mu(1) + 2 mu(2)) = -1 = M(4)
    CHECK(compute_S(4, 3, provider) == -1);
    CHECK(compute_S(4, 3, provider) == M[4]);

    // S(y,u) must equal sum_{n <= y/u} M(y/n) for every valid u
    for (u64 y = 5; y <= 500; ++y) {
        const u64 nu = isqrt(y);
        for (u64 u : {nu + 1, nu + 2, (nu + y) / 2, y - 1}) {
            if (u <= nu || u >= y) continue;
            i128 rhs = 0;
            for (u64 n = 1; n <= y / u; ++n) rhs += M[y / n];
            CAPTURE(y);
            CAPTURE(u);
            REQUIRE(compute_S(y, u, provider) == static_cast<i64>(rhs));
        }
    }
}

TEST_CASE("compute_S skips quotients at mu = 0") {
    const u64 y = 100'000;
    const u64 u = 2000;
    const auto mu = oracle::mu_table(2000);
    const auto M = oracle::mertens_table(2000);
    SCounters counters;
    compute_S(y, u, table_provider(mu, M), &counters);
    u64 squarefree = 0;
    for (u64 n = 1; n <= isqrt(y); ++n) squarefree += mu[n] != 0;
    CHECK(counters.mu_quotients == squarefree);
    const u64 kappa = y / (isqrt(y) + 1);
    CHECK(counters.m_quotients == kappa - y / u);
}

TEST_CASE("compute_S provider gap errors name the missing range") {
    const auto mu = oracle::mu_table(100);
    const auto M = oracle::mertens_table(100);
    MuMProvider p = table_provider(mu, M);
    p.mu_limit = 10;  // nu(100000) = 316 > 10
    CHECK_THROWS_WITH_AS(compute_S(100'000, 2000, p),
                         doctest::Contains("mu provider covers [1, 10]"), data_error);
}

TEST_CASE("isolated M(x) matches brute force and the paper table") {
    const auto M = oracle::mertens_table(1'100'000);
    CHECK(mertens_isolated(1'048'576).M == 257);  // 2^20
    CHECK(mertens_isolated(1'000'000).M == 212);
    CHECK(mertens_isolated(999'983).M == M[999'983]);

    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 40; ++iter) {
        const u64 x = 1 + rng() % 1'100'000;
        CAPTURE(x);
        REQUIRE(mertens_isolated(x).M == M[x]);
    }
}

TEST_CASE("isolated M is independent of u") {
    i64 ref = 0;
    bool first = true;
    for (u64 u : {u64{1001}, u64{2000}, u64{5000}, u64{100'000}}) {
        IsolatedQuery q;
        q.x = 1'000'000;
        q.u = u;
        const i64 got = mertens_isolated(q).M;
        if (first) {
            ref = got;
            first = false;
        }
        CAPTURE(u);
        CHECK(got == ref);
    }
    CHECK(ref == 212);
}

TEST_CASE("isolated M validates parameters") {
    CHECK_THROWS_AS(mertens_isolated(0), parameter_error);
    IsolatedQuery q;
    q.x = 1'000'000;
    q.u = 1000;  // == sqrt(x), must be strictly above
    CHECK_THROWS_AS(mertens_isolated(q), parameter_error);
    q.u = 1'000'000;
    CHECK_THROWS_AS(mertens_isolated(q), parameter_error);
}

TEST_CASE("isolated M agrees with scans at powers of two") {
    for (int n : {10, 16, 21, 24}) {
        const u64 x = u64{1} << n;
        const i64 from_scan = mertens_scan(x, u64{1} << 40).running.M;
        CAPTURE(n);
        CHECK(mertens_isolated(x).M == from_scan);
    }
}

TEST_CASE("nested M(x/128) comes out of the same run") {
    IsolatedQuery q;
    q.x = u64{1} << 27;
    q.nested = true;
    const IsolatedResult r = mertens_isolated(q);
    CHECK(r.x_nested == (u64{1} << 20));
    CHECK(r.M_nested == 257);
    CHECK(r.M == mertens_isolated(q.x).M);

    // nested target below u is read directly off the sieve
    IsolatedQuery q2;
    q2.x = 200'000;
    q2.nested = true;
    const IsolatedResult r2 = mertens_isolated(q2);
    const auto M = oracle::mertens_table(200'000);
    CHECK(r2.M == M[200'000]);
    CHECK(r2.M_nested == M[200'000 / 128]);
}

TEST_CASE("extremum spot value M(7766842813) = 50286") {
    const IsolatedResult r = mertens_isolated(7'766'842'813ull);
    CHECK(r.M == 50'286);
    const double q = static_cast<double>(r.M) / std::sqrt(7'766'842'813.0);
    CHECK(q > 0.570);
    CHECK(q < 0.572);
}

TEST_CASE("division count stays within the O(x/u) budget") {
    for (u64 x : {u64{1'000'000}, u64{10'000'000}, u64{100'000'000}, u64{1'000'000'000}}) {
        const IsolatedResult r = mertens_isolated(x);
        const u64 budget = 10 * (x / r.u) + 4 * icbrt(static_cast<u128>(x) * 2) + 512;
        CAPTURE(x);
        CAPTURE(r.divisions);
        CAPTURE(budget);
        CHECK(r.divisions <= budget);
    }
}

TEST_CASE("isolated M with explicit sieve block and threads is stable") {
    IsolatedQuery q;
    q.x = 50'000'000;
    const i64 ref = mertens_isolated(q).M;

    q.sieve_block = kWheelPeriod * 3;
    CHECK(mertens_isolated(q).M == ref);

    q.sieve_block = 0;
    q.threads = 2;
    CHECK(mertens_isolated(q).M == ref);
}
