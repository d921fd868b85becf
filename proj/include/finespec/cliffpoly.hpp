#pragma once

// Sparse polynomials in the paravector coordinates x0..xn with Clifford
// coefficients, and quotients by powers of a real-coefficient polynomial.
// This is the carrier for the exact symbolic oracle.

#include <cstdint>
#include <vector>

#include "finespec/clifford.hpp"
#include "finespec/rational.hpp"

namespace finespec {

// Exponent vectors packed 6 bits per variable (x0 is the lowest field).
// Degrees stay far below 63 per variable throughout.
using ExpKey = std::uint64_t;

inline long exp_get(ExpKey e, int var) { return long((e >> (6 * var)) & 63u); }
inline ExpKey exp_of_var(int var, long p = 1) { return ExpKey(p) << (6 * var); }
inline long exp_total_degree(ExpKey e, int nvars) {
    long d = 0;
    for (int v = 0; v < nvars; ++v) d += exp_get(e, v);
    return d;
}

struct CPTerm {
    ExpKey e = 0;
    std::uint32_t blade = 0;
    Rational c;
};

// Canonical form: terms sorted by (e, blade), no zero coefficients stored.
struct CliffordPoly {
    int n = 0;  // imaginary units; variables are x0..xn
    std::vector<CPTerm> t;

    bool is_zero() const { return t.empty(); }
    bool is_real() const {
        for (const auto& tm : t)
            if (tm.blade != 0) return false;
        return true;
    }
    std::size_t size() const { return t.size(); }
};

bool operator==(const CliffordPoly& a, const CliffordPoly& b);

CliffordPoly cp_zero(int n);
CliffordPoly cp_const(const Multivector<Rational>& m);
CliffordPoly cp_const_scalar(int n, const Rational& c);
CliffordPoly cp_var(int n, int var);  // the coordinate x_var as a scalar polynomial
CliffordPoly cp_x(int n);             // x = x0 + sum x_i e_i
CliffordPoly cp_xbar(int n);          // x0 - sum x_i e_i
CliffordPoly cp_norm_sq_x(int n);     // |x|^2 = x0^2 + ... + xn^2

void cp_canonicalize(CliffordPoly& p);
CliffordPoly cp_add(const CliffordPoly& a, const CliffordPoly& b);
CliffordPoly cp_sub(const CliffordPoly& a, const CliffordPoly& b);
CliffordPoly cp_neg(CliffordPoly a);
CliffordPoly cp_scale(CliffordPoly a, const Rational& s);
CliffordPoly cp_mul(const CliffordPoly& a, const CliffordPoly& b);
CliffordPoly cp_pow(const CliffordPoly& a, long k);
CliffordPoly cp_diff(const CliffordPoly& a, int var);
CliffordPoly cp_paravector_conj(const CliffordPoly& a);  // negates grade-1 values; grade <= 1 required

// Substitute x_i = 0 for i >= 1.
CliffordPoly cp_restrict_real(const CliffordPoly& a);

// Exact division by a real-coefficient polynomial; false when not divisible.
bool cp_try_divide_real(const CliffordPoly& num, const CliffordPoly& b, CliffordPoly& quot);

Multivector<Rational> cp_eval(const CliffordPoly& a, const Paravector<Rational>& x);

// Quotient num / den_base^den_exp; den_base is real-valued (grade 0 only).
struct CliffordRationalFn {
    CliffordPoly num;
    CliffordPoly den_base;
    long den_exp = 0;
};

CliffordRationalFn crf_from_poly(CliffordPoly p);
CliffordRationalFn crf_make(CliffordPoly num, CliffordPoly den_base, long den_exp);

// Cancel powers of den_base that divide the numerator exactly.
void crf_reduce(CliffordRationalFn& f);

bool equal_rational(const CliffordRationalFn& f, const CliffordRationalFn& g);
CliffordRationalFn restrict_real_axis(const CliffordRationalFn& f);
Multivector<Rational> eval_rational(const CliffordRationalFn& f, const Paravector<Rational>& x);
CliffordRationalFn crf_add(const CliffordRationalFn& f, const CliffordRationalFn& g);
CliffordRationalFn crf_scale(CliffordRationalFn f, const Rational& s);
CliffordRationalFn crf_mul_poly_left(const CliffordPoly& p, const CliffordRationalFn& f);
CliffordRationalFn crf_diff(const CliffordRationalFn& f, int var);

}  // namespace finespec
