#pragma once

#include <algorithm>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/errors.hpp"

namespace mertens {

// Dyadic rational num / 2^exp, normalized so num is odd (or 0 with exp 0).
// The Dirichlet inverse of f only ever produces power-of-two denominators
// because the recursion divides by f(1) = 2.
struct Dyadic {
    i64 num = 0;
    int exp = 0;

    static Dyadic make(i64 num, int exp) {
        Dyadic d{num, exp};
        d.normalize();
        return d;
    }
    void normalize() {
        if (num == 0) {
            exp = 0;
            return;
        }
        while (exp > 0 && (num & 1) == 0) {
            num >>= 1;
            --exp;
        }
    }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return exp == 0; }
    double to_double() const { return static_cast<double>(num) / std::exp2(exp); }
    bool operator==(const Dyadic&) const = default;

    Dyadic operator+(const Dyadic& o) const {
        const int e = std::max(exp, o.exp);
        const i128 a = static_cast<i128>(num) << (e - exp);
        const i128 b = static_cast<i128>(o.num) << (e - o.exp);
        return checked(a + b, e);
    }
    Dyadic operator*(i64 k) const { return checked(static_cast<i128>(num) * k, exp); }
    Dyadic halved() const { return Dyadic::make(num, exp + 1); }

  private:
    static Dyadic checked(i128 v, int e) {
        if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
            throw data_error("dyadic overflow");
        return make(static_cast<i64>(v), e);
    }
};

/// The mod-6 step function: 2, 0, 0, 1, 1, -1 for n == 0..5 (mod 6).
inline int h_step(u64 n) {
    static constexpr int table[6] = {2, 0, 0, 1, 1, -1};
    return table[n % 6];
}

/// f(n) = h(n-1) - h(n) for n >= 1; f(1) = 2.
inline int f_step(u64 n) {
    return h_step(n - 1) - h_step(n);
}

struct DirichletInverseTable {
    std::vector<Dyadic> values;  // index 0 unused
    u64 limit = 0;
};

/// Exact f^(-1) values for n <= limit via the divisor-sum recursion
/// f^(-1)(n) = -(1/f(1)) sum_{d|n, d<n} f(n/d) f^(-1)(d), f^(-1)(1) = 1/2.
DirichletInverseTable dirichlet_inverse_f(u64 limit);

// The inner bracket of G(y,u) uses an undefined symbol k; each
// interpretation fixes k to a small constant and the identity is validated
// against a sieve oracle rather than trusted.
enum class BracketInterpretation { k1 = 1, k2 = 2, k3 = 3 };

struct BenitoVaronaResult {
    u64 x = 0;
    bool valid = false;
    i64 got = 0;       // (1/2) sum f^(-1)(n) G(x/n, u), when integral
    i64 expected = 0;  // sieve oracle M(x)
    bool integral = true;
};

/// Desk-scale evaluation of M(x) = 1/2 sum_{n <= x/u} f^(-1)(n) G(x/n, u).
/// A mismatch is reported as data, not thrown.
BenitoVaronaResult benito_varona_M(u64 x, u64 u, BracketInterpretation interp);

}  // namespace mertens
