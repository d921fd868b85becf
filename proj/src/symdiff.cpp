#include "finespec/symdiff.hpp"

#include <stdexcept>

namespace finespec {

namespace {

// e_mu * p (left blade multiplication); mu = 0 is the identity.
CliffordPoly left_mul_unit(int mu, const CliffordPoly& p) {
    if (mu == 0) return p;
    std::uint32_t u = 1u << (mu - 1);
    CliffordPoly r;
    r.n = p.n;
    r.t.reserve(p.t.size());
    for (const auto& tm : p.t) {
        int sg = blade_sign(u, tm.blade);
        r.t.push_back(CPTerm{tm.e, u ^ tm.blade, sg < 0 ? Rational(-tm.c) : tm.c});
    }
    cp_canonicalize(r);
    return r;
}

CliffordPoly cp_laplacian(const CliffordPoly& p) {
    CliffordPoly r = cp_zero(p.n);
    for (int mu = 0; mu <= p.n; ++mu) r = cp_add(r, cp_diff(cp_diff(p, mu), mu));
    return r;
}

// sum_mu sign_mu e_mu d_mu p, with sign_mu = +1 (D) or -1 for mu >= 1 (Dbar).
CliffordPoly cp_dirac(const CliffordPoly& p, bool bar) {
    CliffordPoly r = cp_diff(p, 0);
    for (int mu = 1; mu <= p.n; ++mu) {
        CliffordPoly g = left_mul_unit(mu, cp_diff(p, mu));
        if (bar) g = cp_neg(std::move(g));
        r = cp_add(r, g);
    }
    return r;
}

struct BaseCtx {
    std::vector<CliffordPoly> d;  // partials of the base
    CliffordPoly lap_b;           // Lap(B)
    CliffordPoly grad_sq;         // sum (d_mu B)^2
};

BaseCtx make_ctx(const CliffordPoly& base) {
    BaseCtx c;
    c.d.reserve(std::size_t(base.n) + 1);
    c.grad_sq = cp_zero(base.n);
    c.lap_b = cp_zero(base.n);
    for (int mu = 0; mu <= base.n; ++mu) {
        c.d.push_back(cp_diff(base, mu));
        c.grad_sq = cp_add(c.grad_sq, cp_mul(c.d.back(), c.d.back()));
        c.lap_b = cp_add(c.lap_b, cp_diff(c.d.back(), mu));
    }
    return c;
}

CliffordRationalFn apply_letter_ctx(const CliffordRationalFn& f, Letter L, const BaseCtx* ctx) {
    const int n = f.num.n;
    const long t = f.den_exp;
    if (L == Letter::Lap) {
        if (t == 0) return crf_make(cp_laplacian(f.num), f.den_base, 0);
        // N/B^t -> [ (Lap N * B - 2t g1 - t N LapB) * B + t(t+1) N grad_sq ] / B^{t+2}
        CliffordPoly g1 = cp_zero(n);
        for (int mu = 0; mu <= n; ++mu)
            g1 = cp_add(g1, cp_mul(cp_diff(f.num, mu), ctx->d[std::size_t(mu)]));
        CliffordPoly inner = cp_mul(cp_laplacian(f.num), f.den_base);
        inner = cp_add(inner, cp_scale(std::move(g1), Rational(-2 * t)));
        inner = cp_add(inner, cp_scale(cp_mul(f.num, ctx->lap_b), Rational(-t)));
        CliffordPoly num = cp_mul(inner, f.den_base);
        num = cp_add(std::move(num), cp_scale(cp_mul(f.num, ctx->grad_sq), Rational(t * (t + 1))));
        CliffordRationalFn r = crf_make(std::move(num), f.den_base, t + 2);
        crf_reduce(r);
        return r;
    }
    const bool bar = (L == Letter::Dbar);
    if (t == 0) return crf_make(cp_dirac(f.num, bar), f.den_base, 0);
    // N/B^t -> [ dirac(N) * B - t sum_mu sgn_mu (e_mu N) d_mu B ] / B^{t+1}
    CliffordPoly num = cp_mul(cp_dirac(f.num, bar), f.den_base);
    for (int mu = 0; mu <= n; ++mu) {
        CliffordPoly part = cp_mul(left_mul_unit(mu, f.num), ctx->d[std::size_t(mu)]);
        Rational coef(-t);
        if (bar && mu >= 1) coef = -coef;
        num = cp_add(std::move(num), cp_scale(std::move(part), coef));
    }
    CliffordRationalFn r = crf_make(std::move(num), f.den_base, t + 1);
    crf_reduce(r);
    return r;
}

}  // namespace

CliffordRationalFn apply_letter(const CliffordRationalFn& f, Letter L) {
    BaseCtx ctx;
    const BaseCtx* p = nullptr;
    if (f.den_exp != 0) {
        ctx = make_ctx(f.den_base);
        p = &ctx;
    }
    return apply_letter_ctx(f, L, p);
}

CliffordRationalFn apply_word(CliffordRationalFn f, const OperatorWord& w) {
    BaseCtx ctx;
    bool have_ctx = false;
    for (Letter L : w) {
        if (f.den_exp != 0 && !have_ctx) {
            ctx = make_ctx(f.den_base);
            have_ctx = true;
        }
        f = apply_letter_ctx(f, L, have_ctx ? &ctx : nullptr);
    }
    return f;
}

CliffordRationalFn apply_dirac_laplace(const CliffordRationalFn& f, long beta, long m,
                                       Letter side) {
    if (beta < 0 || m < 0) throw std::domain_error("apply_dirac_laplace: negative order");
    if (side == Letter::Lap) throw std::invalid_argument("apply_dirac_laplace: side must be D or Dbar");
    OperatorWord w;
    for (long i = 0; i < m; ++i) w.push_back(Letter::Lap);
    for (long i = 0; i < beta; ++i) w.push_back(side);
    return apply_word(f, w);
}

CliffordPoly sym_q(const Paravector<Rational>& s, int n) {
    if (s.n() != n) throw std::invalid_argument("sym_q: fixture dimension mismatch");
    Multivector<Rational> smv = s.to_mv();
    Multivector<Rational> s2 = geometric_product(smv, smv);
    CliffordPoly q = cp_const(s2);
    q = cp_add(q, cp_mul(cp_scale(cp_var(n, 0), Rational(-2)), cp_const(smv)));
    q = cp_add(q, cp_norm_sq_x(n));
    return q;
}

CliffordPoly sym_qnorm(const Paravector<Rational>& s, int n) {
    CliffordPoly q = sym_q(s, n);
    CliffordPoly qn = cp_mul(q, cp_paravector_conj(q));
    if (!qn.is_real()) throw std::logic_error("sym_qnorm: |Q|^2 not real");
    return qn;
}

CliffordPoly sym_x_power(int n, long k) {
    return cp_pow(cp_x(n), k);
}

CliffordRationalFn build_cauchy_kernel_symbolic(const Paravector<Rational>& s, int n) {
    CliffordPoly q = sym_q(s, n);
    CliffordPoly qbar = cp_paravector_conj(q);
    CliffordPoly qn = cp_mul(q, qbar);
    if (!qn.is_real()) throw std::logic_error("cauchy kernel: |Q|^2 not real");
    CliffordPoly smx = cp_sub(cp_const(s.to_mv()), cp_xbar(n));
    return crf_make(cp_mul(smx, qbar), std::move(qn), 1);
}

CliffordRationalFn build_cauchy_kernel_symbolic_form1(const Paravector<Rational>& s, int n) {
    // -(x^2 - 2 x Re(s) + |s|^2)^{-1} (x - sbar)
    CliffordPoly x = cp_x(n);
    CliffordPoly p = cp_mul(x, x);
    p = cp_add(p, cp_scale(x, Rational(-2) * s.x0));
    p = cp_add(p, cp_const_scalar(n, s.norm_sq()));
    CliffordPoly pbar = cp_paravector_conj(p);
    CliffordPoly pn = cp_mul(p, pbar);
    if (!pn.is_real()) throw std::logic_error("form I: |Q_s(x)|^2 not real");
    CliffordPoly xms = cp_sub(x, cp_const(paravector_conjugate(s).to_mv()));
    CliffordPoly num = cp_neg(cp_mul(pbar, xms));
    return crf_make(std::move(num), std::move(pn), 1);
}

CliffordRationalFn sym_k2(const Paravector<Rational>& s, int n, long nu, long l) {
    if (nu < 0 || l < 0) throw std::domain_error("sym_k2: bad indices");
    CliffordPoly q = sym_q(s, n);
    CliffordPoly qbar = cp_paravector_conj(q);
    CliffordPoly qn = cp_mul(q, qbar);
    CliffordPoly smx0 = cp_sub(cp_const(s.to_mv()), cp_var(n, 0));
    CliffordPoly num = cp_mul(cp_pow(smx0, nu), cp_pow(qbar, l));
    return crf_make(std::move(num), std::move(qn), l);
}

CliffordRationalFn sym_k1(const Paravector<Rational>& s, int n, long nu, long l) {
    CliffordRationalFn k2 = sym_k2(s, n, nu, l);
    CliffordPoly smx = cp_sub(cp_const(s.to_mv()), cp_xbar(n));
    return crf_mul_poly_left(smx, k2);
}

CliffordRationalFn sym_s_minus_x0_power(const Paravector<Rational>& s, int n, long p) {
    CliffordPoly smx0 = cp_sub(cp_const(s.to_mv()), cp_var(n, 0));
    if (p >= 0) return crf_from_poly(cp_pow(smx0, p));
    CliffordPoly sbmx0 = cp_sub(cp_const(paravector_conjugate(s).to_mv()), cp_var(n, 0));
    CliffordPoly norm = cp_mul(smx0, sbmx0);
    if (!norm.is_real()) throw std::logic_error("sym_s_minus_x0_power: norm not real");
    return crf_make(cp_pow(sbmx0, -p), std::move(norm), -p);
}

bool axiality_check(const CliffordRationalFn& f,
                    const std::vector<std::pair<Rational, Rational>>& samples,
                    const std::vector<Rational>& I1, const std::vector<Rational>& I2) {
    const int n = f.num.n;
    auto check_unit = [&](const std::vector<Rational>& I) {
        if (int(I.size()) != n) throw std::invalid_argument("axiality_check: unit size");
        Rational s(0);
        for (const auto& c : I) s += c * c;
        if (s != 1) throw std::invalid_argument("axiality_check: not a unit 1-vector");
    };
    check_unit(I1);
    check_unit(I2);

    const Rational half(1, 2);
    auto extract = [&](const std::vector<Rational>& I, const Rational& u, const Rational& v)
        -> std::pair<Multivector<Rational>, Multivector<Rational>> {
        std::vector<Rational> up = I, dn = I;
        for (auto& c : up) c *= v;
        for (auto& c : dn) c *= -v;
        Multivector<Rational> fp = eval_rational(f, Paravector<Rational>(u, up));
        Multivector<Rational> fm = eval_rational(f, Paravector<Rational>(u, dn));
        Multivector<Rational> alpha = (fp + fm) * half;
        Multivector<Rational> imv(n);
        for (int i = 0; i < n; ++i) imv.c[std::size_t(1) << i] = -I[std::size_t(i)];
        Multivector<Rational> beta = geometric_product(imv, (fp - fm) * half);
        return {alpha, beta};
    };

    for (const auto& [u, v] : samples) {
        auto [a1, b1] = extract(I1, u, v);
        auto [a2, b2] = extract(I2, u, v);
        if (!(a1 == a2) || !(b1 == b2)) return false;
    }
    return true;
}

}  // namespace finespec
