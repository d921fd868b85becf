#pragma once

// Coefficient families and special polynomial families attached to the
// fine-structure kernels: the H_l^k / P_l^k tables, the structure constants,
// and the a/b coefficient arrays of the closed-form kernel combinations.

#include <vector>

#include "finespec/cliffpoly.hpp"
#include "finespec/symdiff.hpp"

namespace finespec {

enum class AxialKind { H, P, Mixed };

// sum_j c_j x^a xbar^b, evaluated in the commutative slice plane of x.
struct AxialPoly {
    AxialKind kind = AxialKind::Mixed;
    long ell = -1;
    long k = -1;
    struct Term {
        long a, b;
        Rational c;
    };
    std::vector<Term> t;  // sorted by (a,b), no zeros

    bool is_zero() const { return t.empty(); }
};

bool axial_equal(const AxialPoly& p, const AxialPoly& q);
AxialPoly axial_add(const AxialPoly& p, const AxialPoly& q);
AxialPoly axial_scale(AxialPoly p, const Rational& s);
AxialPoly axial_mul_x(AxialPoly p);     // multiply by x
AxialPoly axial_mul_xbar(AxialPoly p);  // multiply by xbar (left; x and xbar commute)
AxialPoly axial_mul_x0(const AxialPoly& p);  // multiply by x0 = (x + xbar)/2

// C_j^k(l) = binom(l+j-1, l-1) binom(k-l-j, l-1)
Rational coeff_C(long k, long j, long ell);

// H_l^k; the zero table when k - 2l + 1 < 0.
AxialPoly h_poly(long ell, long k);
// P_l^k for l >= 1; P_0^k = x^k (the reading consistent with
// P_l^k = H_{l+1}^{k+1} - xbar H_{l+1}^k, which the tests pin down).
AxialPoly p_poly(long ell, long k);
// Clifford-Appell: (2 h_n)!/k! * P_{h_n}^k, k >= 2 h_n.
AxialPoly clifford_appell(int n, long k);

template <typename S>
Multivector<S> eval_axial_poly(const AxialPoly& p, const Paravector<S>& x) {
    // plane arithmetic over span{1, x_und}: elements r + q w with w^2 = -|x_und|^2
    const S w2 = S(0) - x.vec_norm_sq();
    struct Pl {
        S r, q;
    };
    auto mul = [&](const Pl& u, const Pl& v) {
        return Pl{u.r * v.r + u.q * v.q * w2, u.r * v.q + u.q * v.r};
    };
    auto pw = [&](Pl b, long e) {
        Pl acc{S(1), S(0)};
        for (long i = 0; i < e; ++i) acc = mul(acc, b);
        return acc;
    };
    const Pl xp{x.x0, S(1)}, xm{x.x0, S(0) - S(1)};
    Pl out{S(0), S(0)};
    for (const auto& tm : p.t) {
        Pl v = mul(pw(xp, tm.a), pw(xm, tm.b));
        S c(tm.c.get_d());
        if constexpr (std::is_same_v<S, Rational>) c = tm.c;
        out.r += c * v.r;
        out.q += c * v.q;
    }
    Multivector<S> r(x.n());
    r.c[0] = out.r;
    for (int i = 0; i < x.n(); ++i) r.c[std::size_t(1) << i] += out.q * x.xv[std::size_t(i)];
    return r;
}

// Substitute the symbolic paravector for x (exact expansion).
CliffordPoly axial_to_poly(const AxialPoly& p, int n);

// ---- structure constants ---------------------------------------------------

Rational structure_gamma(long h, long m);            // 4^m m! (-h)_m
Rational structure_sigma(long h, long l);            // 2^{2l-1} (l-1)! (-h)_l
Rational structure_c(long h, long beta, long m);     // 2^beta (h-m) gamma / m!
Rational structure_c_bold(long h, long beta, long m);  // 2^beta 4^m (-h)_m

// ---- kernel coefficient families -------------------------------------------

struct CoeffFamily {
    Letter side = Letter::D;
    long beta = 0, m = 0, h = 0;
    long kpar = 0;  // k1 (odd beta) or k2 (even beta)
    bool odd = true;
    std::vector<Rational> a, b;
};

CoeffFamily coeff_family(Letter side, long beta, long m, long h);
// Dbar-odd family with an explicit base value b_0 (used by the fitting tool).
CoeffFamily coeff_family_dbar_odd(long beta, long m, long h, const Rational& b0);

// Base coefficient of the Dbar-odd family, from the shipped oracle-fitted
// table (regenerate with `finespec table dbar-base`).
Rational dbar_odd_base(long h, long k1, long m);
struct DbarBaseEntry {
    long h, k1, m;
    const char* value;
};
const std::vector<DbarBaseEntry>& dbar_odd_base_table();

// Coefficient-sum limit constants: negative for side D, positive for Dbar.
Rational aux_limit_constant(long beta, long m, long h, Letter side);

}  // namespace finespec
