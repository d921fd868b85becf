#include "finespec/polys.hpp"

#include <algorithm>
#include <stdexcept>

namespace finespec {

namespace {

void axial_canonicalize(AxialPoly& p) {
    std::sort(p.t.begin(), p.t.end(), [](const AxialPoly::Term& u, const AxialPoly::Term& v) {
        return u.a != v.a ? u.a < v.a : u.b < v.b;
    });
    std::vector<AxialPoly::Term> out;
    for (auto& tm : p.t) {
        if (!out.empty() && out.back().a == tm.a && out.back().b == tm.b)
            out.back().c += tm.c;
        else
            out.push_back(tm);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const AxialPoly::Term& t) { return t.c == 0; }),
              out.end());
    p.t = std::move(out);
}

}  // namespace

bool axial_equal(const AxialPoly& p, const AxialPoly& q) {
    if (p.t.size() != q.t.size()) return false;
    for (std::size_t i = 0; i < p.t.size(); ++i)
        if (p.t[i].a != q.t[i].a || p.t[i].b != q.t[i].b || p.t[i].c != q.t[i].c) return false;
    return true;
}

AxialPoly axial_add(const AxialPoly& p, const AxialPoly& q) {
    AxialPoly r;
    r.t = p.t;
    r.t.insert(r.t.end(), q.t.begin(), q.t.end());
    axial_canonicalize(r);
    return r;
}

AxialPoly axial_scale(AxialPoly p, const Rational& s) {
    if (s == 0) return AxialPoly{};
    for (auto& tm : p.t) tm.c *= s;
    p.kind = AxialKind::Mixed;
    return p;
}

AxialPoly axial_mul_x(AxialPoly p) {
    for (auto& tm : p.t) ++tm.a;
    p.kind = AxialKind::Mixed;
    return p;
}

AxialPoly axial_mul_xbar(AxialPoly p) {
    for (auto& tm : p.t) ++tm.b;
    p.kind = AxialKind::Mixed;
    return p;
}

AxialPoly axial_mul_x0(const AxialPoly& p) {
    AxialPoly r;
    const Rational half(1, 2);
    r.t.reserve(2 * p.t.size());
    for (const auto& tm : p.t) {
        r.t.push_back({tm.a + 1, tm.b, tm.c * half});
        r.t.push_back({tm.a, tm.b + 1, tm.c * half});
    }
    axial_canonicalize(r);
    return r;
}

Rational coeff_C(long k, long j, long ell) {
    if (ell < 1) throw std::domain_error("coeff_C: ell >= 1 required");
    if (j < 0 || j > k - 2 * ell + 1) throw std::domain_error("coeff_C: j out of range");
    return Rational(binom(ell + j - 1, ell - 1) * binom(k - ell - j, ell - 1));
}

AxialPoly h_poly(long ell, long k) {
    if (ell < 1) throw std::domain_error("h_poly: ell >= 1 required");
    AxialPoly p;
    p.kind = AxialKind::H;
    p.ell = ell;
    p.k = k;
    if (k - 2 * ell + 1 < 0) return p;  // zero polynomial by convention
    for (long j = 0; j <= k - 2 * ell + 1; ++j)
        p.t.push_back({k - 2 * ell + 1 - j, j, coeff_C(k, j, ell)});
    axial_canonicalize(p);
    p.kind = AxialKind::H;
    return p;
}

AxialPoly p_poly(long ell, long k) {
    if (ell < 0) throw std::domain_error("p_poly: ell >= 0 required");
    AxialPoly p;
    p.kind = AxialKind::P;
    p.ell = ell;
    p.k = k;
    if (k - 2 * ell < 0) return p;
    if (ell == 0) {
        p.t.push_back({k, 0, Rational(1)});  // P_0^k = x^k
        return p;
    }
    for (long j = 0; j <= k - 2 * ell; ++j) {
        Rational c(binom(ell + j - 1, ell - 1) * binom(k - ell - j, ell));
        if (c != 0) p.t.push_back({k - 2 * ell - j, j, c});
    }
    axial_canonicalize(p);
    p.kind = AxialKind::P;
    return p;
}

AxialPoly clifford_appell(int n, long k) {
    if (n < 1 || n % 2 == 0) throw std::domain_error("clifford_appell: odd n required");
    long h = (n - 1) / 2;
    if (k < 2 * h) throw std::domain_error("clifford_appell: k >= 2 h_n required");
    Rational scale = Rational(factorial(2 * h)) / Rational(factorial(k));
    AxialPoly q = axial_scale(p_poly(h, k), scale);
    q.kind = AxialKind::P;
    q.ell = h;
    q.k = k;
    return q;
}

CliffordPoly axial_to_poly(const AxialPoly& p, int n) {
    CliffordPoly x = cp_x(n), xb = cp_xbar(n);
    CliffordPoly r = cp_zero(n);
    for (const auto& tm : p.t) {
        CliffordPoly term = cp_mul(cp_pow(x, tm.a), cp_pow(xb, tm.b));
        r = cp_add(r, cp_scale(std::move(term), tm.c));
    }
    return r;
}

Rational structure_gamma(long h, long m) {
    if (m < 0 || m > h) throw std::domain_error("structure_gamma: need 0 <= m <= h");
    return rat_pow(Rational(4), m) * Rational(factorial(m)) * pochhammer_neg(h, m);
}

Rational structure_sigma(long h, long l) {
    if (l < 1 || l > h) throw std::domain_error("structure_sigma: need 1 <= l <= h");
    return rat_pow(Rational(2), 2 * l - 1) * Rational(factorial(l - 1)) * pochhammer_neg(h, l);
}

Rational structure_c(long h, long beta, long m) {
    if (beta < 0 || m < 0 || beta + m > h) throw std::domain_error("structure_c: range");
    return rat_pow(Rational(2), beta) * Rational(h - m) * structure_gamma(h, m) /
           Rational(factorial(m));
}

Rational structure_c_bold(long h, long beta, long m) {
    if (beta < 0 || m < 0 || beta + m > h) throw std::domain_error("structure_c_bold: range");
    return rat_pow(Rational(2), beta) * rat_pow(Rational(4), m) * pochhammer_neg(h, m);
}

namespace {

Rational fact_ratio(long num, long den) { return Rational(factorial(num)) / Rational(factorial(den)); }

}  // namespace

CoeffFamily coeff_family_dbar_odd(long beta, long m, long h, const Rational& b0) {
    CoeffFamily f;
    f.side = Letter::Dbar;
    f.beta = beta;
    f.m = m;
    f.h = h;
    f.odd = true;
    long k1 = (beta - 1) / 2;
    f.kpar = k1;
    for (long j = 0; j <= k1; ++j) {
        Rational a = rat_pow(Rational(2), 2 * j + 1) * Rational(factorial(m + k1 + 1 + j)) *
                     Rational(factorial(k1 + j + 1)) / Rational(factorial(2 * j + 1));
        a *= binom_pair(h - m - k1 - j - 2, h - m - 2 * k1 - 2);
        f.a.push_back(a);
    }
    f.b.resize(std::size_t(k1) + 1);
    f.b[0] = b0;
    for (long j = 0; j <= k1 - 1; ++j)
        f.b[std::size_t(j + 1)] = f.a[std::size_t(j)] / Rational((j + 1) * (k1 - j));
    return f;
}

CoeffFamily coeff_family(Letter side, long beta, long m, long h) {
    if (beta < 1 || m < 0 || beta + m > h)
        throw std::domain_error("coeff_family: need beta >= 1, beta + m <= h_n");
    CoeffFamily f;
    f.side = side;
    f.beta = beta;
    f.m = m;
    f.h = h;
    f.odd = (beta % 2 == 1);
    if (side == Letter::D) {
        if (f.odd) {
            long k1 = (beta - 1) / 2;
            f.kpar = k1;
            for (long j = 0; j <= k1; ++j) {
                Rational b = rat_pow(Rational(2), 2 * j) * Rational(factorial(m + k1 + j)) *
                             binom_pair(h - m - k1 - j - 1, h - m - 2 * k1 - 1) *
                             fact_ratio(k1 + j, 2 * j);
                f.b.push_back(b);
            }
            for (long j = 0; j <= k1 - 1; ++j)
                f.a.push_back(Rational(j + 1) / Rational(k1 + j + 1) * f.b[std::size_t(j + 1)]);
        } else {
            long k2 = beta / 2;
            f.kpar = k2;
            for (long j = 0; j <= k2 - 1; ++j) {
                Rational a = rat_pow(Rational(2), 2 * j) * Rational(factorial(m + k2 + j)) *
                             fact_ratio(k2 + j - 1, 2 * j) *
                             binom_pair(h - m - k2 - 1 - j, h - m - 2 * k2);
                f.a.push_back(a);
                f.b.push_back(Rational(2 * (k2 + j)) / Rational(2 * j + 1) * a);
            }
        }
    } else if (side == Letter::Dbar) {
        if (f.odd) {
            long k1 = (beta - 1) / 2;
            return coeff_family_dbar_odd(beta, m, h, dbar_odd_base(h, k1, m));
        }
        long k2 = beta / 2;
        f.kpar = k2;
        for (long j = 0; j <= k2; ++j) {
            Rational a = rat_pow(Rational(2), 2 * j) * Rational(factorial(m + k2 + j)) *
                         Rational(factorial(k2 - j)) * Rational(binom(k2 + j, 2 * j)) *
                         binom_pair(h - m - k2 - 1 - j, h - m - 2 * k2 - 1);
            f.a.push_back(a);
        }
        for (long j = 0; j <= k2 - 1; ++j)
            f.b.push_back(Rational(2 * (k2 - j)) / Rational(2 * j + 1) * f.a[std::size_t(j)]);
    } else {
        throw std::invalid_argument("coeff_family: side must be D or Dbar");
    }
    return f;
}

// Oracle-fitted base coefficients of the Dbar-odd family, beta = 2 k1 + 1.
// Regenerate with `finespec table dbar-base --hn <h>` and compare.
const std::vector<DbarBaseEntry>& dbar_odd_base_table() {
    static const std::vector<DbarBaseEntry> table = {
        // h, k1, m, value
        {1, 0, 0, "0"},
        {2, 0, 0, "1"},
        {2, 0, 1, "0"},
        {3, 0, 0, "2"},
        {3, 0, 1, "1"},
        {3, 0, 2, "0"},
        {3, 1, 0, "0"},
        {4, 0, 0, "3"},
        {4, 0, 1, "2"},
        {4, 0, 2, "2"},
        {4, 0, 3, "0"},
        {4, 1, 0, "2"},
        {4, 1, 1, "0"},
    };
    return table;
}

Rational dbar_odd_base(long h, long k1, long m) {
    for (const auto& e : dbar_odd_base_table())
        if (e.h == h && e.k1 == k1 && e.m == m) return rat_parse(e.value);
    throw std::domain_error("dbar_odd_base: no shipped value for (h,k1,m)=(" + std::to_string(h) +
                            "," + std::to_string(k1) + "," + std::to_string(m) + ")");
}

Rational aux_limit_constant(long beta, long m, long h, Letter side) {
    if (beta < 1 || beta + m > h) throw std::domain_error("aux_limit_constant: range");
    CoeffFamily f = coeff_family(side, beta, m, h);
    Rational s(0);
    for (const auto& v : f.a) s += v;
    if (side == Letter::D)
        for (const auto& v : f.b) s -= v;
    else
        for (const auto& v : f.b) s += v;
    Rational pref = rat_pow(Rational(2), beta + 2 * m) * Rational(factorial(h));
    pref /= Rational(factorial(side == Letter::D ? h - m - 1 : h - m));
    pref /= Rational(factorial(2 * m + beta));
    return s * pref;
}

}  // namespace finespec
