#pragma once

// Closed-form fine-structure kernels at paravector arguments, in both the
// float and the exact instantiation, plus their symbolic counterparts.

#include <string>
#include <type_traits>

#include "finespec/polys.hpp"
#include "finespec/symdiff.hpp"

namespace finespec {

enum class KernelForm { I, II };
enum class KKind { K1L, K2 };

struct KernelSpec {
    int n = 3;        // odd
    Letter side = Letter::D;
    long beta = 1;    // >= 1
    long m = 0;       // beta + m <= h_n
    long h() const { return (n - 1) / 2; }
};

void validate_spec(const KernelSpec& spec);

struct SingularSphere : std::domain_error {
    double distance;  // float kind: distance to the spectral sphere in (Re, |vec|)
    explicit SingularSphere(const std::string& what, double dist = 0.0)
        : std::domain_error(what), distance(dist) {}
};

// x in [s] <=> Re x = Re s and |x_und| = |s_und|.  Exact test for rationals,
// relative 1e-12 for floats.
template <typename S>
void check_off_sphere(const Paravector<S>& s, const Paravector<S>& x) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (x.x0 == s.x0 && x.vec_norm_sq() == s.vec_norm_sq())
            throw SingularSphere("kernel: x lies on the spectral sphere [s]");
    } else {
        double du = double(x.x0 - s.x0);
        double dv = std::sqrt(double(x.vec_norm_sq())) - std::sqrt(double(s.vec_norm_sq()));
        double dist = std::hypot(du, dv);
        double scale = std::sqrt(double(s.norm_sq())) + std::sqrt(double(x.norm_sq()));
        if (dist <= 1e-12 * scale)
            throw SingularSphere("kernel: x within 1e-12 of the spectral sphere [s], distance " +
                                     std::to_string(dist),
                                 dist);
    }
}

// Q_{c,s}(x) = s^2 - 2 x0 s + |x|^2, a paravector in the plane of s.
template <typename S>
Paravector<S> qc_value(const Paravector<S>& s, const Paravector<S>& x) {
    Paravector<S> q = plane_mul(s, s);
    S t = S(2) * x.x0;
    q.x0 -= t * s.x0;
    for (int i = 0; i < q.n(); ++i) q.xv[std::size_t(i)] -= t * s.xv[std::size_t(i)];
    q.x0 += x.norm_sq();
    return q;
}

template <typename S>
Paravector<S> plane_pow(const Paravector<S>& p, long e) {
    Paravector<S> r = Paravector<S>::real(p.n(), S(1));
    for (long i = 0; i < e; ++i) r = plane_mul(r, p);
    return r;
}

template <typename S>
Multivector<S> qc_inv_pow(const Paravector<S>& s, const Paravector<S>& x, long l) {
    if (l < 1) throw std::domain_error("qc_inv_pow: l >= 1");
    check_off_sphere(s, x);
    return plane_pow(paravector_inverse(qc_value(s, x)), l).to_mv();
}

template <typename S>
Multivector<S> k_kernel(KKind kind, const Paravector<S>& s, const Paravector<S>& x, long nu,
                        long l) {
    if (nu < 0 || l < 0) throw std::domain_error("k_kernel: bad indices");
    check_off_sphere(s, x);
    Paravector<S> part = plane_pow(paravector_inverse(qc_value(s, x)), l);
    Paravector<S> smx0 = s;
    smx0.x0 -= x.x0;
    part = plane_mul(plane_pow(smx0, nu), part);
    if (kind == KKind::K2) return part.to_mv();
    Paravector<S> sxb = s - paravector_conjugate(x);
    return geometric_product(sxb.to_mv(), part.to_mv());
}

template <typename S>
Multivector<S> cauchy_kernel(const Paravector<S>& s, const Paravector<S>& x, KernelForm form) {
    check_off_sphere(s, x);
    if (form == KernelForm::II) return k_kernel(KKind::K1L, s, x, 0, 1);
    // form I: -(x^2 - 2 x Re(s) + |s|^2)^{-1} (x - sbar)
    Paravector<S> p = plane_mul(x, x);
    S t = S(2) * s.x0;
    p.x0 -= t * x.x0;
    for (int i = 0; i < p.n(); ++i) p.xv[std::size_t(i)] -= t * x.xv[std::size_t(i)];
    p.x0 += s.norm_sq();
    Paravector<S> pinv = paravector_inverse(p);
    Paravector<S> xms = x - paravector_conjugate(s);
    Multivector<S> r = geometric_product(pinv.to_mv(), xms.to_mv());
    return r * S(-1);
}

// One signed term of the closed-form kernel combination; coefficients carry
// the structure-constant prefactor.
struct KTermRef {
    KKind kind;
    long nu, ell;
    Rational coef;
};

std::vector<KTermRef> kernel_terms(const KernelSpec& spec);

template <typename S>
Multivector<S> kernel_closed_form(const KernelSpec& spec, const Paravector<S>& s,
                                  const Paravector<S>& x) {
    validate_spec(spec);
    check_off_sphere(s, x);
    Multivector<S> acc(spec.n);
    for (const auto& tr : kernel_terms(spec)) {
        S c(0);
        if constexpr (std::is_same_v<S, Rational>)
            c = tr.coef;
        else
            c = tr.coef.get_d();
        acc += k_kernel(tr.kind, s, x, tr.nu, tr.ell) * c;
    }
    return acc;
}

template <typename S>
Multivector<S> fueter_sce_kernel(const Paravector<S>& s, const Paravector<S>& x, int n) {
    if (n < 1 || n % 2 == 0) throw std::domain_error("fueter_sce_kernel: odd n required");
    check_off_sphere(s, x);
    long h = (n - 1) / 2;
    Rational g = structure_gamma(h, h);
    S c(0);
    if constexpr (std::is_same_v<S, Rational>)
        c = g;
    else
        c = g.get_d();
    return k_kernel(KKind::K1L, s, x, 0, h + 1) * c;
}

// Exact rational-function form of the same combination (for the oracle suite).
CliffordRationalFn kernel_closed_form_symbolic(const KernelSpec& spec,
                                               const Paravector<Rational>& s);

// Solve for the Dbar-odd base coefficient b_0 against the symbolic oracle.
Rational fit_dbar_odd_base(long h, long k1, long m, const Paravector<Rational>& s);

}  // namespace finespec
