#include "mertens/dirichlet.hpp"

#include "mertens/sieve.hpp"

namespace mertens {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// mu and M over [1, limit] from one sieve pass.
struct SmallTables {
    std::vector<std::int8_t> mu;  // index 0 unused
    std::vector<i64> M;
    explicit SmallTables(u64 limit) {
        const PrimeSet ps = primes_up_to(prime_coverage_for(limit));
        const LogTable lt = make_log_table(ps);
        SieveBlock block = make_raw_block(1, limit);
        sieve_block(block, lt, ps);
        classify_block(block);
        mu.resize(limit + 1);
        M.resize(limit + 1);
        for (u64 n = 1; n <= limit; ++n) {
            mu[n] = static_cast<std::int8_t>(mu_at(block, n));
            M[n] = M[n - 1] + mu[n];
        }
    }
};

}  // namespace

DirichletInverseTable dirichlet_inverse_f(u64 limit) {
    if (limit < 1) throw parameter_error("dirichlet_inverse_f: limit must be >= 1");
    DirichletInverseTable table;
    table.limit = limit;
    table.values.assign(limit + 1, Dyadic{});
    std::vector<Dyadic> acc(limit + 1, Dyadic{});
    // Forward accumulation: once the outer loop reaches d, acc[d] holds the
    // full proper-divisor sum sum_{e|d, e<d} f(d/e) f^(-1)(e).
    for (u64 d = 1; d <= limit; ++d) {
        Dyadic v;
        if (d == 1) {
            v = Dyadic::make(1, 1);  // 1 / f(1) = 1/2
        } else {
            v = (acc[d] * -1).halved();  // -(1/f(1)) * acc
        }
        table.values[d] = v;
        if (v.is_zero()) continue;
        for (u64 k = 2, m = 2 * d; m <= limit; ++k, m += d) {
            const int f = f_step(k);
            if (f != 0) acc[m] = acc[m] + v * f;
        }
    }
    return table;
}

BenitoVaronaResult benito_varona_M(u64 x, u64 u, BracketInterpretation interp) {
    if (x < 8) throw parameter_error("benito_varona_M: x too small");
    if (x > 2'000'000) throw parameter_error("benito_varona_M: desk-scale evaluation only");
    const u64 nu_x = isqrt(x);
    if (u <= nu_x || u >= x)
        throw parameter_error("benito_varona_M: u must satisfy sqrt(x) < u < x");
    const i64 k = static_cast<i64>(interp);

    const SmallTables tables(std::max(u, nu_x + 1));
    const DirichletInverseTable finv = dirichlet_inverse_f(x / u);

    auto G = [&](u64 y) -> i64 {
        const u64 nu = isqrt(y);
        const u64 kappa = y / (nu + 1);
        i128 g = -3;
        for (u64 n = y / u + 1; n <= kappa; ++n)
            g += static_cast<i128>(h_step(n) - h_step(n - 1)) * tables.M[y / n];
        g += static_cast<i128>(h_step(nu)) * tables.M[kappa];
        for (u64 n = 1; n <= nu; ++n) {
            const int mu = tables.mu[n];
            if (mu == 0) continue;
            const i64 bracket = 3 * floor_div(static_cast<i64>(n), 3 * k) -
                                2 * floor_div(static_cast<i64>(n) - k, 2 * k);
            g += static_cast<i128>(bracket) * mu;
        }
        return static_cast<i64>(g);
    };

    Dyadic half_sum;
    for (u64 n = 1; n <= x / u; ++n) {
        const Dyadic fi = finv.values[n];
        if (fi.is_zero()) continue;
        half_sum = half_sum + fi * G(x / n);
    }
    half_sum = half_sum.halved();

    BenitoVaronaResult res;
    res.x = x;
    // oracle: direct sieve prefix
    const SmallTables oracle(x);
    res.expected = oracle.M[x];
    res.integral = half_sum.is_integer();
    res.got = res.integral ? half_sum.num : 0;
    res.valid = res.integral && res.got == res.expected;
    return res;
}

}  // namespace mertens
