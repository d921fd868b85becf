#include "finespec/kernels.hpp"

#include <algorithm>

namespace finespec {

void validate_spec(const KernelSpec& spec) {
    if (spec.n < 3 || spec.n % 2 == 0) throw std::domain_error("KernelSpec: odd n >= 3 required");
    if (spec.side == Letter::Lap) throw std::domain_error("KernelSpec: side must be D or Dbar");
    if (spec.beta < 1 || spec.m < 0 || spec.beta + spec.m > spec.h())
        throw std::domain_error("KernelSpec: need beta >= 1 and beta + m <= h_n");
}

std::vector<KTermRef> kernel_terms(const KernelSpec& spec) {
    validate_spec(spec);
    const long h = spec.h(), m = spec.m;
    CoeffFamily f = coeff_family(spec.side, spec.beta, m, h);
    const Rational c = spec.side == Letter::D ? structure_c(h, spec.beta, m)
                                              : structure_c_bold(h, spec.beta, m);
    const Rational bsign = spec.side == Letter::D ? Rational(-1) : Rational(1);
    std::vector<KTermRef> out;
    if (f.odd) {
        const long k1 = f.kpar;
        for (long j = 0; j < long(f.a.size()); ++j)
            out.push_back({KKind::K1L, 2 * j + 1, m + j + 2 + k1, c * f.a[std::size_t(j)]});
        for (long j = 0; j < long(f.b.size()); ++j)
            out.push_back({KKind::K2, 2 * j, m + j + 1 + k1, bsign * c * f.b[std::size_t(j)]});
    } else {
        const long k2 = f.kpar;
        for (long j = 0; j < long(f.a.size()); ++j)
            out.push_back({KKind::K1L, 2 * j, m + j + 1 + k2, c * f.a[std::size_t(j)]});
        for (long j = 0; j < long(f.b.size()); ++j)
            out.push_back({KKind::K2, 2 * j + 1, m + 1 + j + k2, bsign * c * f.b[std::size_t(j)]});
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const KTermRef& t) { return t.coef == 0; }),
              out.end());
    return out;
}

namespace {

CliffordRationalFn symbolic_combination(const std::vector<KTermRef>& terms,
                                        const Paravector<Rational>& s, int n) {
    CliffordRationalFn acc = crf_from_poly(cp_zero(n));
    for (const auto& tr : terms) {
        CliffordRationalFn k = tr.kind == KKind::K1L ? sym_k1(s, n, tr.nu, tr.ell)
                                                     : sym_k2(s, n, tr.nu, tr.ell);
        acc = crf_add(acc, crf_scale(std::move(k), tr.coef));
    }
    return acc;
}

}  // namespace

CliffordRationalFn kernel_closed_form_symbolic(const KernelSpec& spec,
                                               const Paravector<Rational>& s) {
    return symbolic_combination(kernel_terms(spec), s, spec.n);
}

Rational fit_dbar_odd_base(long h, long k1, long m, const Paravector<Rational>& s) {
    const int n = int(2 * h + 1);
    const long beta = 2 * k1 + 1;
    if (beta + m > h) throw std::domain_error("fit_dbar_odd_base: beta + m exceeds h_n");

    CliffordRationalFn oracle =
        apply_dirac_laplace(build_cauchy_kernel_symbolic(s, n), beta, m, Letter::Dbar);

    // Every term except c_bold * b_0 * K^2_{0, m+1+k1} is determined by (c1).
    CoeffFamily f = coeff_family_dbar_odd(beta, m, h, Rational(0));
    const Rational c = structure_c_bold(h, beta, m);
    CliffordRationalFn known = crf_from_poly(cp_zero(n));
    for (long j = 0; j <= k1; ++j)
        known = crf_add(known, crf_scale(sym_k1(s, n, 2 * j + 1, m + j + 2 + k1),
                                         c * f.a[std::size_t(j)]));
    for (long j = 1; j <= k1; ++j)
        known = crf_add(known, crf_scale(sym_k2(s, n, 2 * j, m + j + 1 + k1),
                                         c * f.b[std::size_t(j)]));

    CliffordRationalFn resid = crf_add(oracle, crf_scale(known, Rational(-1)));
    CliffordRationalFn unit = crf_scale(sym_k2(s, n, 0, m + 1 + k1), c);

    // One exact probe pins the constant; the full identity is then verified exactly.
    std::vector<Rational> xv(std::size_t(n), Rational(0));
    xv[0] = Rational(1, 3);
    if (n > 1) xv[1] = Rational(1, 2);
    Paravector<Rational> probe(Rational(1, 7), xv);
    Multivector<Rational> rv = eval_rational(resid, probe);
    Multivector<Rational> uv = eval_rational(unit, probe);
    std::size_t pick = 0;
    while (pick < uv.c.size() && uv.c[pick] == 0) ++pick;
    if (pick == uv.c.size()) throw std::logic_error("fit_dbar_odd_base: degenerate probe");
    Rational b0 = rv.c[pick] / uv.c[pick];

    if (!equal_rational(resid, crf_scale(unit, b0)))
        throw std::logic_error("fit_dbar_odd_base: residual is not a multiple of K^2 as expected");
    return b0;
}

}  // namespace finespec
