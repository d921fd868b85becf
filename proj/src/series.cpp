#include "finespec/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace finespec {

namespace {

double norm2(const Paravector<double>& p) { return std::sqrt(p.norm_sq()); }

void check_inside(const Paravector<double>& s, const Paravector<double>& x) {
    if (!(norm2(x) < norm2(s))) throw std::domain_error("series: requires |x| < |s|");
}

// Powers of s (plane arithmetic), any integer exponent.
struct SPowers {
    Paravector<double> s, sinv;
    explicit SPowers(const Paravector<double>& sv) : s(sv), sinv(paravector_inverse(sv)) {}
    Paravector<double> operator()(long e) const {
        return e >= 0 ? plane_pow(s, e) : plane_pow(sinv, -e);
    }
};

}  // namespace

double tail_T(double t, long r, long K) {
    if (!(t >= 0 && t < 1)) throw std::domain_error("tail_T: need 0 <= t < 1");
    if (t == 0) return 0.0;
    long double full = powl((long double)t, r) / powl(1.0L - (long double)t, r + 1);
    long double partial = 0.0L, c = 1.0L;  // C(r, r) = 1
    long double tk = powl((long double)t, r);
    for (long k = r; k <= K; ++k) {
        if (k > r) {
            c = c * (long double)k / (long double)(k - r);
            tk *= (long double)t;
        }
        partial += c * tk;
    }
    long double tail = full - partial;
    return tail > 0 ? double(tail) : 0.0;
}

SeriesResult series_q_inv_pow(const Paravector<double>& s, const Paravector<double>& x, long l,
                              long K) {
    if (l < 1) throw std::domain_error("series_q_inv_pow: l >= 1");
    check_inside(s, x);
    const int n = s.n();
    SPowers sp(s);
    Multivector<double> acc(n);
    for (long k = 2 * l - 1; k <= K; ++k) {
        Multivector<double> hv = eval_axial_poly(h_poly(l, k), x);
        acc += geometric_product(hv, sp(-k - 1).to_mv());
    }
    const long r = 2 * l - 1;
    const double xa = norm2(x), sa = norm2(s);
    double tail = 0;
    if (xa > 0 && K >= r) tail = std::pow(xa, double(-r)) / sa * tail_T(xa / sa, r, K);
    if (K < r) tail = std::numeric_limits<double>::infinity();
    return {acc, K, tail};
}

SeriesResult series_k_kernel(KKind kind, const Paravector<double>& s, const Paravector<double>& x,
                             long nu, long l, long K) {
    if (nu < 0 || l < 1) throw std::domain_error("series_k_kernel: bad indices");
    check_inside(s, x);
    const int n = s.n();
    SPowers sp(s);
    const double x0 = x.x0;
    Multivector<double> acc(n);
    const long kmin = (kind == KKind::K2) ? 2 * l - 1 : 2 * (l - 1);
    for (long k = kmin; k <= K; ++k) {
        AxialPoly poly = (kind == KKind::K2) ? h_poly(l, k) : p_poly(l - 1, k);
        if (poly.is_zero()) continue;
        Multivector<double> pv = eval_axial_poly(poly, x);
        for (long j = 0; j <= nu; ++j) {
            double cj = double(binom(nu, j).get_d()) * std::pow(-x0, double(j));
            acc += geometric_product(pv, sp(nu - j - k - 1).to_mv()) * cj;
        }
    }
    const long r = 2 * l - 1;
    const double xa = norm2(x), sa = norm2(s);
    const double amp = std::pow(sa + std::fabs(x0), double(nu));
    double tail = 0;
    if (xa > 0) {
        if (kind == KKind::K2)
            tail = amp * std::pow(xa, double(-r)) / sa * tail_T(xa / sa, r, K);
        else
            tail = amp * (std::pow(xa, double(-r)) * tail_T(xa / sa, r, K + 1) +
                          std::pow(xa, double(1 - r)) / sa * tail_T(xa / sa, r, K));
    }
    if (K < kmin) tail = std::numeric_limits<double>::infinity();
    return {acc, K, tail};
}

SeriesResult series_kernel(const KernelSpec& spec, const Paravector<double>& s,
                           const Paravector<double>& x, long K) {
    validate_spec(spec);
    check_inside(s, x);
    Multivector<double> acc(spec.n);
    double tail = 0;
    for (const auto& tr : kernel_terms(spec)) {
        SeriesResult part = series_k_kernel(tr.kind, s, x, tr.nu, tr.ell, K);
        double c = tr.coef.get_d();
        acc += part.value * c;
        tail += std::fabs(c) * part.tail_bound;
    }
    return {acc, K, tail};
}

long series_truncation_q(const Paravector<double>& s, const Paravector<double>& x, long l,
                         double target, long k_cap) {
    const long r = 2 * l - 1;
    const double xa = norm2(x), sa = norm2(s);
    if (xa == 0) return r;
    for (long K = r; K <= k_cap; ++K) {
        double tail = std::pow(xa, double(-r)) / sa * tail_T(xa / sa, r, K);
        if (tail <= target) return K;
    }
    throw std::domain_error("series_truncation_q: target unreachable before k_cap");
}

long series_truncation_kernel(const KernelSpec& spec, const Paravector<double>& s,
                              const Paravector<double>& x, double target, long k_cap) {
    auto terms = kernel_terms(spec);
    const double xa = norm2(x), sa = norm2(s);
    const double x0 = std::fabs(x.x0);
    long kmin = 0;
    for (const auto& tr : terms) kmin = std::max(kmin, 2 * tr.ell - 1);
    if (xa == 0) return kmin;
    for (long K = kmin; K <= k_cap; ++K) {
        double tail = 0;
        for (const auto& tr : terms) {
            const long r = 2 * tr.ell - 1;
            const double amp = std::pow(sa + x0, double(tr.nu));
            double part;
            if (tr.kind == KKind::K2)
                part = amp * std::pow(xa, double(-r)) / sa * tail_T(xa / sa, r, K);
            else
                part = amp * (std::pow(xa, double(-r)) * tail_T(xa / sa, r, K + 1) +
                              std::pow(xa, double(1 - r)) / sa * tail_T(xa / sa, r, K));
            tail += std::fabs(tr.coef.get_d()) * part;
        }
        if (tail <= target) return K;
    }
    throw std::domain_error("series_truncation_kernel: target unreachable before k_cap");
}

}  // namespace finespec
