#include "finespec/cliffpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace finespec {

namespace {

struct TermKey {
    ExpKey e;
    std::uint32_t b;
    bool operator==(const TermKey& o) const { return e == o.e && b == o.b; }
};

struct TermKeyHash {
    std::size_t operator()(const TermKey& k) const {
        std::uint64_t h = k.e * 0x9E3779B97F4A7C15ull;
        h ^= (std::uint64_t(k.b) * 0xC2B2AE3D27D4EB4Full) + (h << 6) + (h >> 2);
        return std::size_t(h);
    }
};

using Accum = std::unordered_map<TermKey, Rational, TermKeyHash>;

void accum_add(Accum& m, ExpKey e, std::uint32_t b, Rational v) {
    auto [it, inserted] = m.try_emplace(TermKey{e, b}, v);
    if (!inserted) it->second += v;
}

CliffordPoly accum_finish(int n, Accum& m) {
    CliffordPoly p;
    p.n = n;
    p.t.reserve(m.size());
    for (auto& [k, v] : m) {
        if (v == 0) continue;
        p.t.push_back(CPTerm{k.e, k.b, v});
    }
    std::sort(p.t.begin(), p.t.end(), [](const CPTerm& a, const CPTerm& b) {
        return a.e != b.e ? a.e < b.e : a.blade < b.blade;
    });
    return p;
}

void check_same_n(const CliffordPoly& a, const CliffordPoly& b) {
    if (a.n != b.n) throw std::invalid_argument("CliffordPoly: dimension mismatch");
}

}  // namespace

bool operator==(const CliffordPoly& a, const CliffordPoly& b) {
    if (a.n != b.n || a.t.size() != b.t.size()) return false;
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        const auto& x = a.t[i];
        const auto& y = b.t[i];
        if (x.e != y.e || x.blade != y.blade || x.c != y.c) return false;
    }
    return true;
}

CliffordPoly cp_zero(int n) {
    CliffordPoly p;
    p.n = n;
    return p;
}

CliffordPoly cp_const(const Multivector<Rational>& m) {
    CliffordPoly p;
    p.n = m.n;
    for (std::size_t b = 0; b < m.c.size(); ++b)
        if (m.c[b] != 0) p.t.push_back(CPTerm{0, std::uint32_t(b), m.c[b]});
    return p;
}

CliffordPoly cp_const_scalar(int n, const Rational& c) {
    CliffordPoly p;
    p.n = n;
    if (c != 0) p.t.push_back(CPTerm{0, 0, c});
    return p;
}

CliffordPoly cp_var(int n, int var) {
    CliffordPoly p;
    p.n = n;
    p.t.push_back(CPTerm{exp_of_var(var), 0, Rational(1)});
    return p;
}

CliffordPoly cp_x(int n) {
    CliffordPoly p;
    p.n = n;
    p.t.push_back(CPTerm{exp_of_var(0), 0, Rational(1)});
    for (int i = 1; i <= n; ++i) p.t.push_back(CPTerm{exp_of_var(i), 1u << (i - 1), Rational(1)});
    cp_canonicalize(p);
    return p;
}

CliffordPoly cp_xbar(int n) {
    CliffordPoly p;
    p.n = n;
    p.t.push_back(CPTerm{exp_of_var(0), 0, Rational(1)});
    for (int i = 1; i <= n; ++i) p.t.push_back(CPTerm{exp_of_var(i), 1u << (i - 1), Rational(-1)});
    cp_canonicalize(p);
    return p;
}

CliffordPoly cp_norm_sq_x(int n) {
    CliffordPoly p;
    p.n = n;
    for (int v = 0; v <= n; ++v) p.t.push_back(CPTerm{exp_of_var(v, 2), 0, Rational(1)});
    cp_canonicalize(p);
    return p;
}

void cp_canonicalize(CliffordPoly& p) {
    std::sort(p.t.begin(), p.t.end(), [](const CPTerm& a, const CPTerm& b) {
        return a.e != b.e ? a.e < b.e : a.blade < b.blade;
    });
    std::vector<CPTerm> out;
    out.reserve(p.t.size());
    for (auto& tm : p.t) {
        if (!out.empty() && out.back().e == tm.e && out.back().blade == tm.blade)
            out.back().c += tm.c;
        else
            out.push_back(tm);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const CPTerm& t) { return t.c == 0; }),
              out.end());
    p.t = std::move(out);
}

CliffordPoly cp_add(const CliffordPoly& a, const CliffordPoly& b) {
    check_same_n(a, b);
    CliffordPoly p;
    p.n = a.n;
    p.t.reserve(a.t.size() + b.t.size());
    p.t.insert(p.t.end(), a.t.begin(), a.t.end());
    p.t.insert(p.t.end(), b.t.begin(), b.t.end());
    cp_canonicalize(p);
    return p;
}

CliffordPoly cp_sub(const CliffordPoly& a, const CliffordPoly& b) { return cp_add(a, cp_neg(b)); }

CliffordPoly cp_neg(CliffordPoly a) {
    for (auto& tm : a.t) tm.c = -tm.c;
    return a;
}

CliffordPoly cp_scale(CliffordPoly a, const Rational& s) {
    if (s == 0) return cp_zero(a.n);
    for (auto& tm : a.t) tm.c *= s;
    return a;
}

CliffordPoly cp_mul(const CliffordPoly& a, const CliffordPoly& b) {
    check_same_n(a, b);
    Accum m;
    m.reserve(a.t.size() + b.t.size());
    for (const auto& ta : a.t) {
        for (const auto& tb : b.t) {
            int sg = blade_sign(ta.blade, tb.blade);
            Rational v = ta.c * tb.c;
            if (sg < 0) v = -v;
            accum_add(m, ta.e + tb.e, ta.blade ^ tb.blade, std::move(v));
        }
    }
    return accum_finish(a.n, m);
}

CliffordPoly cp_pow(const CliffordPoly& a, long k) {
    if (k < 0) throw std::domain_error("cp_pow: negative exponent");
    CliffordPoly r = cp_const_scalar(a.n, 1);
    CliffordPoly base = a;
    while (k) {
        if (k & 1) r = cp_mul(r, base);
        k >>= 1;
        if (k) base = cp_mul(base, base);
    }
    return r;
}

CliffordPoly cp_diff(const CliffordPoly& a, int var) {
    CliffordPoly p;
    p.n = a.n;
    p.t.reserve(a.t.size());
    for (const auto& tm : a.t) {
        long e = exp_get(tm.e, var);
        if (e == 0) continue;
        p.t.push_back(CPTerm{tm.e - exp_of_var(var), tm.blade, tm.c * Rational(e)});
    }
    return p;  // already canonical: order preserved by monotone key shift per fixed var
}

CliffordPoly cp_paravector_conj(const CliffordPoly& a) {
    CliffordPoly p = a;
    for (auto& tm : p.t) {
        int g = std::popcount(tm.blade);
        if (g > 1) throw std::domain_error("cp_paravector_conj: value has grade > 1");
        if (g == 1) tm.c = -tm.c;
    }
    return p;
}

CliffordPoly cp_restrict_real(const CliffordPoly& a) {
    CliffordPoly p;
    p.n = a.n;
    for (const auto& tm : a.t) {
        bool keep = true;
        for (int v = 1; v <= a.n && keep; ++v)
            if (exp_get(tm.e, v) != 0) keep = false;
        if (keep) p.t.push_back(tm);
    }
    return p;
}

// Exact division of num by the real polynomial b under the packed-exponent
// lex order.  The leading coefficient of b is a nonzero rational (a unit), so
// the leading term of the running remainder can always be cancelled as long
// as the exponents stay componentwise >= lead(b); the lead strictly decreases,
// so the loop terminates with remainder 0 exactly when b divides num.
bool cp_try_divide_real(const CliffordPoly& num, const CliffordPoly& b, CliffordPoly& quot) {
    if (!b.is_real() || b.is_zero()) throw std::invalid_argument("cp_try_divide_real: bad divisor");
    if (num.is_zero()) {
        quot = cp_zero(num.n);
        return true;
    }
    const CPTerm& ltb = b.t.back();
    auto fieldwise_ge = [&](ExpKey e) {
        for (int v = 0; v <= num.n; ++v)
            if (exp_get(e, v) < exp_get(ltb.e, v)) return false;
        return true;
    };
    std::map<std::pair<ExpKey, std::uint32_t>, Rational> r;
    for (const auto& tm : num.t) r[{tm.e, tm.blade}] = tm.c;
    std::vector<CPTerm> q;
    while (!r.empty()) {
        auto it = std::prev(r.end());
        ExpKey e = it->first.first;
        std::uint32_t blade = it->first.second;
        if (!fieldwise_ge(e)) return false;
        ExpKey qe = e - ltb.e;
        Rational qc = it->second / ltb.c;
        q.push_back(CPTerm{qe, blade, qc});
        for (const auto& tb : b.t) {
            auto key = std::make_pair(qe + tb.e, blade);
            auto jt = r.find(key);
            if (jt == r.end()) {
                r.emplace(key, -qc * tb.c);
            } else {
                jt->second -= qc * tb.c;
                if (jt->second == 0) r.erase(jt);
            }
        }
    }
    quot.n = num.n;
    quot.t = std::move(q);
    cp_canonicalize(quot);
    return true;
}

Multivector<Rational> cp_eval(const CliffordPoly& a, const Paravector<Rational>& x) {
    if (x.n() != a.n) throw std::invalid_argument("cp_eval: dimension mismatch");
    Multivector<Rational> r(a.n);
    for (const auto& tm : a.t) {
        Rational v = tm.c;
        long e0 = exp_get(tm.e, 0);
        if (e0) v *= rat_pow(x.x0, e0);
        for (int i = 1; i <= a.n; ++i) {
            long ei = exp_get(tm.e, i);
            if (ei) v *= rat_pow(x.xv[std::size_t(i - 1)], ei);
        }
        r.c[tm.blade] += v;
    }
    return r;
}

CliffordRationalFn crf_from_poly(CliffordPoly p) {
    CliffordRationalFn f;
    f.num = std::move(p);
    f.den_base = cp_const_scalar(f.num.n, 1);
    f.den_exp = 0;
    return f;
}

CliffordRationalFn crf_make(CliffordPoly num, CliffordPoly den_base, long den_exp) {
    if (!den_base.is_real()) throw std::invalid_argument("denominator must be real-valued");
    if (den_base.is_zero()) throw std::invalid_argument("denominator base is zero");
    CliffordRationalFn f;
    f.num = std::move(num);
    f.den_base = std::move(den_base);
    f.den_exp = den_exp;
    return f;
}

void crf_reduce(CliffordRationalFn& f) {
    if (f.num.is_zero()) {
        f.den_exp = 0;
        return;
    }
    CliffordPoly q;
    while (f.den_exp > 0 && cp_try_divide_real(f.num, f.den_base, q)) {
        f.num = std::move(q);
        --f.den_exp;
    }
}

bool equal_rational(const CliffordRationalFn& f, const CliffordRationalFn& g) {
    if (f.num.n != g.num.n) throw std::invalid_argument("equal_rational: dimension mismatch");
    const bool same_base = (f.den_base == g.den_base);
    if (same_base) {
        if (f.den_exp == g.den_exp) return f.num == g.num;
        long d = g.den_exp - f.den_exp;
        if (d > 0) return cp_mul(f.num, cp_pow(f.den_base, d)) == g.num;
        return f.num == cp_mul(g.num, cp_pow(g.den_base, -d));
    }
    // Cross-multiplication; real denominators commute with everything.
    CliffordPoly lhs = cp_mul(f.num, cp_pow(g.den_base, g.den_exp));
    CliffordPoly rhs = cp_mul(g.num, cp_pow(f.den_base, f.den_exp));
    return lhs == rhs;
}

CliffordRationalFn restrict_real_axis(const CliffordRationalFn& f) {
    CliffordRationalFn r;
    r.num = cp_restrict_real(f.num);
    r.den_base = cp_restrict_real(f.den_base);
    r.den_exp = f.den_exp;
    if (r.den_exp > 0 && r.den_base.is_zero())
        throw std::domain_error("restrict_real_axis: denominator vanishes on the real axis");
    return r;
}

Multivector<Rational> eval_rational(const CliffordRationalFn& f, const Paravector<Rational>& x) {
    Multivector<Rational> num = cp_eval(f.num, x);
    if (f.den_exp == 0) return num;
    Multivector<Rational> dmv = cp_eval(f.den_base, x);
    Rational den = rat_pow(dmv.c[0], f.den_exp);
    if (den == 0) throw std::domain_error("eval_rational: pole at evaluation point");
    Rational inv = Rational(1) / den;
    return num * inv;
}

CliffordRationalFn crf_add(const CliffordRationalFn& f, const CliffordRationalFn& g) {
    if (f.den_exp == 0 && g.den_exp == 0)
        return crf_from_poly(cp_add(f.num, g.num));
    if (f.den_base == g.den_base || f.den_exp == 0 || g.den_exp == 0) {
        const CliffordPoly& base = (f.den_exp != 0) ? f.den_base : g.den_base;
        long e = std::max(f.den_exp, g.den_exp);
        CliffordPoly a = (e > f.den_exp) ? cp_mul(f.num, cp_pow(base, e - f.den_exp)) : f.num;
        CliffordPoly b = (e > g.den_exp) ? cp_mul(g.num, cp_pow(base, e - g.den_exp)) : g.num;
        return crf_make(cp_add(a, b), base, e);
    }
    CliffordPoly fb = cp_pow(f.den_base, f.den_exp);
    CliffordPoly gb = cp_pow(g.den_base, g.den_exp);
    CliffordPoly num = cp_add(cp_mul(f.num, gb), cp_mul(g.num, fb));
    return crf_make(std::move(num), cp_mul(fb, gb), 1);
}

CliffordRationalFn crf_scale(CliffordRationalFn f, const Rational& s) {
    f.num = cp_scale(std::move(f.num), s);
    return f;
}

CliffordRationalFn crf_mul_poly_left(const CliffordPoly& p, const CliffordRationalFn& f) {
    CliffordRationalFn r = f;
    r.num = cp_mul(p, f.num);
    return r;
}

CliffordRationalFn crf_diff(const CliffordRationalFn& f, int var) {
    if (f.den_exp == 0) return crf_make(cp_diff(f.num, var), f.den_base, 0);
    CliffordPoly num = cp_mul(cp_diff(f.num, var), f.den_base);
    num = cp_add(std::move(num),
                 cp_scale(cp_mul(f.num, cp_diff(f.den_base, var)), Rational(-f.den_exp)));
    CliffordRationalFn r = crf_make(std::move(num), f.den_base, f.den_exp + 1);
    crf_reduce(r);
    return r;
}

}  // namespace finespec
