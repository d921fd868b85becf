#pragma once

// Dense arithmetic in the real Clifford algebra R_n with e_i e_j + e_j e_i = -2 delta_ij.
// Blades are indexed by bitmask: bit i set <=> factor e_{i+1}.  Scalars are either
// exact rationals (proof layer) or doubles (quadrature layer).

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "finespec/rational.hpp"

namespace finespec {

// Sign of e_A * e_B: transposition count to interleave, then e_i^2 = -1 per common unit.
inline int blade_sign(std::uint32_t a, std::uint32_t b) {
    int swaps = 0;
    std::uint32_t t = a >> 1;
    while (t) {
        swaps += std::popcount(t & b);
        t >>= 1;
    }
    int sign = (swaps & 1) ? -1 : 1;
    if (std::popcount(a & b) & 1) sign = -sign;
    return sign;
}

template <typename S>
struct Multivector {
    int n = 0;
    std::vector<S> c;  // 2^n coefficients, index = blade bitmask

    Multivector() : n(0), c(1, S(0)) {}
    explicit Multivector(int n_) : n(n_), c(std::size_t(1) << n_, S(0)) {}

    static Multivector scalar(int n_, const S& v) {
        Multivector m(n_);
        m.c[0] = v;
        return m;
    }
    static Multivector unit(int n_, int i) {  // e_i, 1-based
        Multivector m(n_);
        m.c[std::size_t(1) << (i - 1)] = S(1);
        return m;
    }

    S& operator[](std::size_t b) { return c[b]; }
    const S& operator[](std::size_t b) const { return c[b]; }

    bool is_zero() const {
        for (const auto& v : c)
            if (!(v == S(0))) return false;
        return true;
    }

    Multivector& operator+=(const Multivector& o) {
        check_dim(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        check_dim(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    Multivector& operator*=(const S& s) {
        for (auto& v : c) v *= s;
        return *this;
    }

    void check_dim(const Multivector& o) const {
        if (n != o.n) throw std::invalid_argument("Multivector: dimension mismatch");
    }
};

template <typename S>
Multivector<S> operator+(Multivector<S> a, const Multivector<S>& b) { return a += b; }
template <typename S>
Multivector<S> operator-(Multivector<S> a, const Multivector<S>& b) { return a -= b; }
template <typename S>
Multivector<S> operator*(Multivector<S> a, const S& s) { return a *= s; }
template <typename S>
Multivector<S> operator*(const S& s, Multivector<S> a) { return a *= s; }
template <typename S>
Multivector<S> operator-(const Multivector<S>& a) {
    Multivector<S> r = a;
    return r *= S(-1);
}

template <typename S>
bool operator==(const Multivector<S>& a, const Multivector<S>& b) {
    return a.n == b.n && a.c == b.c;
}

template <typename S>
Multivector<S> geometric_product(const Multivector<S>& a, const Multivector<S>& b) {
    a.check_dim(b);
    Multivector<S> r(a.n);
    const std::size_t N = a.c.size();
    for (std::size_t i = 0; i < N; ++i) {
        if (a.c[i] == S(0)) continue;
        for (std::size_t j = 0; j < N; ++j) {
            if (b.c[j] == S(0)) continue;
            int sg = blade_sign(std::uint32_t(i), std::uint32_t(j));
            S term = a.c[i] * b.c[j];
            if (sg < 0)
                r.c[i ^ j] -= term;
            else
                r.c[i ^ j] += term;
        }
    }
    return r;
}

template <typename S>
Multivector<S> operator*(const Multivector<S>& a, const Multivector<S>& b) {
    return geometric_product(a, b);
}

template <typename S>
Multivector<S> grade_part(const Multivector<S>& a, int g) {
    Multivector<S> r(a.n);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (std::popcount(std::uint32_t(i)) == g) r.c[i] = a.c[i];
    return r;
}

template <typename S>
int max_grade(const Multivector<S>& a) {
    int g = 0;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!(a.c[i] == S(0))) g = std::max(g, std::popcount(std::uint32_t(i)));
    return g;
}

inline double mv_abs(double x) { return std::fabs(x); }
inline Rational mv_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Sum of |coefficients|; submultiplicative under the geometric product.
template <typename S>
S coeff_norm(const Multivector<S>& a) {
    S r(0);
    for (const auto& v : a.c) r += mv_abs(v);
    return r;
}

// ---------------------------------------------------------------------------
// Paravectors x = x_0 + sum x_i e_i
// ---------------------------------------------------------------------------

template <typename S>
struct Paravector {
    S x0{0};
    std::vector<S> xv;

    Paravector() = default;
    Paravector(S r, std::vector<S> v) : x0(std::move(r)), xv(std::move(v)) {}
    static Paravector real(int n, const S& r) { return Paravector(r, std::vector<S>(n, S(0))); }

    int n() const { return int(xv.size()); }

    S norm_sq() const {
        S r = x0 * x0;
        for (const auto& v : xv) r += v * v;
        return r;
    }
    S vec_norm_sq() const {
        S r(0);
        for (const auto& v : xv) r += v * v;
        return r;
    }

    Multivector<S> to_mv() const {
        Multivector<S> m(n());
        m.c[0] = x0;
        for (int i = 0; i < n(); ++i) m.c[std::size_t(1) << i] = xv[i];
        return m;
    }
};

template <typename S>
Paravector<S> paravector_conjugate(const Paravector<S>& x) {
    Paravector<S> r = x;
    for (auto& v : r.xv) v = -v;
    return r;
}

template <typename S>
Paravector<S> paravector_inverse(const Paravector<S>& x) {
    S q = x.norm_sq();
    if (q == S(0)) throw std::domain_error("paravector_inverse: zero paravector");
    Paravector<S> r = paravector_conjugate(x);
    r.x0 /= q;
    for (auto& v : r.xv) v /= q;
    return r;
}

template <typename S>
Paravector<S> operator+(const Paravector<S>& a, const Paravector<S>& b) {
    Paravector<S> r = a;
    r.x0 += b.x0;
    for (int i = 0; i < r.n(); ++i) r.xv[i] += b.xv[i];
    return r;
}

template <typename S>
Paravector<S> operator-(const Paravector<S>& a, const Paravector<S>& b) {
    Paravector<S> r = a;
    r.x0 -= b.x0;
    for (int i = 0; i < r.n(); ++i) r.xv[i] -= b.xv[i];
    return r;
}

template <typename S>
Paravector<S> operator*(const S& s, Paravector<S> a) {
    a.x0 *= s;
    for (auto& v : a.xv) v *= s;
    return a;
}

// Paravectors with parallel vector parts commute; this covers products inside
// one slice plane (x * xbar, powers, Q_{c,s} evaluations).
template <typename S>
Paravector<S> plane_mul(const Paravector<S>& a, const Paravector<S>& b) {
    // (a0 + au)(b0 + bu) = a0 b0 - <au,bu> + a0 bu + b0 au  when au x bu = 0.
    S dot(0);
    for (int i = 0; i < a.n(); ++i) dot += a.xv[i] * b.xv[i];
    Paravector<S> r = a;
    r.x0 = a.x0 * b.x0 - dot;
    for (int i = 0; i < a.n(); ++i) r.xv[i] = a.x0 * b.xv[i] + b.x0 * a.xv[i];
    return r;
}

// x^k by k-fold geometric product; powers of a paravector stay in span{1, x_und}.
template <typename S>
Multivector<S> mv_power(const Paravector<S>& x, long k) {
    if (k < 0) throw std::domain_error("mv_power: negative exponent");
    Multivector<S> r = Multivector<S>::scalar(x.n(), S(1));
    Multivector<S> xm = x.to_mv();
    for (long i = 0; i < k; ++i) r = geometric_product(r, xm);
    return r;
}

// ---------------------------------------------------------------------------
// Slice decomposition x = u + I v
// ---------------------------------------------------------------------------

template <typename S>
struct SliceTriple {
    S u{0};
    S v{0};
    bool has_unit = false;      // false on the real axis (v = 0): I undefined
    std::vector<S> unit;        // I, a unit 1-vector, when has_unit

    Paravector<S> reconstruct() const {
        if (!has_unit) return Paravector<S>::real(int(unit.size()), u);
        Paravector<S> r(u, unit);
        for (auto& w : r.xv) w *= v;
        return r;
    }
};

inline double scalar_sqrt(double x) { return std::sqrt(x); }
inline Rational scalar_sqrt(const Rational& x) {
    Rational r;
    if (!rat_sqrt(x, r))
        throw std::domain_error("slice_decompose: |x_und| is not rational for this point");
    return r;
}

template <typename S>
SliceTriple<S> slice_decompose(const Paravector<S>& x) {
    SliceTriple<S> t;
    t.u = x.x0;
    S vv = x.vec_norm_sq();
    t.unit.assign(std::size_t(x.n()), S(0));
    if (vv == S(0)) {
        t.v = S(0);
        t.has_unit = false;
        return t;
    }
    t.v = scalar_sqrt(vv);
    t.has_unit = true;
    for (int i = 0; i < x.n(); ++i) t.unit[std::size_t(i)] = x.xv[std::size_t(i)] / t.v;
    return t;
}

}  // namespace finespec
