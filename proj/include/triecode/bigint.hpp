#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace triecode {

// Internal invariant check that survives NDEBUG. Violations surface as
// std::logic_error, which the CLI maps to exit code 4.
#define TRIECODE_CHECK(cond, msg)                                          \
    do {                                                                   \
        if (!(cond)) throw std::logic_error(std::string("invariant: ") + (msg)); \
    } while (0)

inline mpz_class binomial(std::uint64_t n, std::uint64_t k) {
    mpz_class r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

// log2 of a positive integer, accurate to double precision even for huge values.
inline double log2_z(const mpz_class& z) {
    TRIECODE_CHECK(z > 0, "log2_z needs a positive argument");
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp);
}

// log2 of a positive rational.
inline double log2_q(const mpq_class& q) {
    TRIECODE_CHECK(q > 0, "log2_q needs a positive argument");
    return log2_z(q.get_num()) - log2_z(q.get_den());
}

// Smallest integer d with 2^d >= x, computed exactly (x > 0).
inline std::int64_t ceil_log2_q(const mpq_class& x) {
    TRIECODE_CHECK(x > 0, "ceil_log2_q needs a positive argument");
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    std::int64_t d = static_cast<std::int64_t>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                     static_cast<std::int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // d is within 1 of the answer; nudge until minimal.
    auto holds = [&](std::int64_t e) {
        mpq_class pow;                       // 2^e as a rational
        if (e >= 0) {
            mpz_class p = 1;
            p <<= static_cast<std::size_t>(e);
            pow = p;
        } else {
            mpz_class p = 1;
            p <<= static_cast<std::size_t>(-e);
            pow = mpq_class(1, p);
        }
        return pow >= x;
    };
    while (!holds(d)) ++d;
    while (d > INT64_MIN && holds(d - 1)) --d;
    return d;
}

// Exact ceil(log2(z)) for a positive integer (0 for z = 1).
inline std::int64_t ceil_log2_z(const mpz_class& z) {
    TRIECODE_CHECK(z > 0, "ceil_log2_z needs a positive argument");
    if (z == 1) return 0;
    mpz_class zm1 = z - 1;
    return static_cast<std::int64_t>(mpz_sizeinbase(zm1.get_mpz_t(), 2));
}

// floor(x * 2^d) for x >= 0.
inline mpz_class floor_shift(const mpq_class& x, std::uint64_t d) {
    mpz_class num = x.get_num();
    num <<= static_cast<std::size_t>(d);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    return r;
}

}  // namespace triecode
