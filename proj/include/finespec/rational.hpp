#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace finespec {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Standard binomial: 0 outside 0 <= k <= n. Requires n >= 0.
inline Integer binom(long n, long k) {
    if (n < 0) throw std::domain_error("binom: negative upper index");
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Binomial read through its co-degree r = N - K, valid for negative N:
//   binom_pair(N, K) = N (N-1) ... (N-r+1) / r!   if r >= 0, else 0.
// Coincides with binom(N, K) when N >= K >= 0.  The kernel coefficient
// tables index binomials this way, and the only out-of-range spot they hit
// is K = N (giving 1, even for N < 0).
inline Rational binom_pair(long N, long K) {
    long r = N - K;
    if (r < 0) return Rational(0);
    Integer num(1);
    for (long i = 0; i < r; ++i) num *= Integer(N - i);
    return Rational(num) / Rational(factorial(r));
}

// (-h)_l as a rising product, 0 <= l <= h.
inline Rational pochhammer_neg(long h, long l) {
    if (h < 0 || l < 0 || l > h) throw std::domain_error("pochhammer_neg: need 0 <= l <= h");
    Integer r(1);
    for (long i = 0; i < l; ++i) r *= Integer(-h + i);
    return Rational(r);
}

inline Rational rat_pow(const Rational& q, long e) {
    if (e < 0) {
        if (q == 0) throw std::domain_error("rat_pow: zero to negative power");
        return Rational(1) / rat_pow(q, -e);
    }
    Rational r(1), b = q;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Exact square root of a nonnegative rational; false when not a perfect square.
inline bool rat_sqrt(const Rational& q, Rational& out) {
    if (q < 0) return false;
    Integer num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = Rational(rn) / Rational(rd);
    return true;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Rational rat_parse(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace finespec
