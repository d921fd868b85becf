#pragma once

// Commuting paravector operators T = sum e_mu T_mu on R^d, their S-spectrum
// slices, the K^1/K^2/D/Dbar resolvent operators, and the contour-quadrature
// functional calculi.  Entries of Q_{c,s}(T) live in the commutative plane of
// s, so the heavy lifting is complex-like d x d elimination; the d=1 case
// collapses to the kernels module.

#include <complex>
#include <functional>
#include <optional>

#include "finespec/kernels.hpp"
#include "finespec/series.hpp"

namespace finespec {

// a + b I for the (implicit) slice unit I; I^2 = -1.
template <typename S>
struct PlaneScalar {
    S re{0}, im{0};

    PlaneScalar operator+(const PlaneScalar& o) const { return {re + o.re, im + o.im}; }
    PlaneScalar operator-(const PlaneScalar& o) const { return {re - o.re, im - o.im}; }
    PlaneScalar operator*(const PlaneScalar& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    PlaneScalar operator*(const S& c) const { return {re * c, im * c}; }
    S abs2() const { return re * re + im * im; }
    PlaneScalar inv() const {
        S a = abs2();
        if (a == S(0)) throw std::domain_error("PlaneScalar: inverting zero");
        return {re / a, S(0) - im / a};
    }
};

template <typename S>
struct PlaneMat {
    int d = 0;
    std::vector<PlaneScalar<S>> a;  // row-major

    explicit PlaneMat(int d_ = 0) : d(d_), a(std::size_t(d_) * d_) {}
    PlaneScalar<S>& at(int i, int j) { return a[std::size_t(i) * d + j]; }
    const PlaneScalar<S>& at(int i, int j) const { return a[std::size_t(i) * d + j]; }
    static PlaneMat identity(int d_) {
        PlaneMat m(d_);
        for (int i = 0; i < d_; ++i) m.at(i, i) = {S(1), S(0)};
        return m;
    }
};

template <typename S>
PlaneMat<S> pm_mul(const PlaneMat<S>& x, const PlaneMat<S>& y) {
    PlaneMat<S> r(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int k = 0; k < x.d; ++k) {
            PlaneScalar<S> v = x.at(i, k);
            if (v.re == S(0) && v.im == S(0)) continue;
            for (int j = 0; j < x.d; ++j) r.at(i, j) = r.at(i, j) + v * y.at(k, j);
        }
    return r;
}

template <typename S>
PlaneMat<S> pm_pow(const PlaneMat<S>& x, long e) {
    PlaneMat<S> r = PlaneMat<S>::identity(x.d);
    for (long i = 0; i < e; ++i) r = pm_mul(r, x);
    return r;
}

// Gauss-Jordan with partial pivoting on |.|^2; returns |det|^2 alongside.
template <typename S>
PlaneMat<S> pm_inverse(PlaneMat<S> m, S* det_abs2 = nullptr) {
    const int d = m.d;
    PlaneMat<S> inv = PlaneMat<S>::identity(d);
    S det2(1);
    for (int col = 0; col < d; ++col) {
        int piv = col;
        S best = m.at(col, col).abs2();
        for (int r = col + 1; r < d; ++r) {
            S v = m.at(r, col).abs2();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == S(0)) {
            if (det_abs2) *det_abs2 = S(0);
            throw std::domain_error("pm_inverse: singular plane matrix");
        }
        if (piv != col)
            for (int j = 0; j < d; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        det2 *= best;
        PlaneScalar<S> pinv = m.at(col, col).inv();
        for (int j = 0; j < d; ++j) {
            m.at(col, j) = m.at(col, j) * pinv;
            inv.at(col, j) = inv.at(col, j) * pinv;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            PlaneScalar<S> f = m.at(r, col);
            if (f.re == S(0) && f.im == S(0)) continue;
            for (int j = 0; j < d; ++j) {
                m.at(r, j) = m.at(r, j) - f * m.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    if (det_abs2) *det_abs2 = det2;
    return inv;
}

template <typename S>
S pm_det_abs2(const PlaneMat<S>& m) {
    PlaneMat<S> c = m;
    S det2(1);
    const int d = m.d;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        S best = c.at(col, col).abs2();
        for (int r = col + 1; r < d; ++r) {
            S v = c.at(r, col).abs2();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == S(0)) return S(0);
        if (piv != col)
            for (int j = 0; j < d; ++j) std::swap(c.at(piv, j), c.at(col, j));
        det2 *= best;
        PlaneScalar<S> pinv = c.at(col, col).inv();
        for (int r = col + 1; r < d; ++r) {
            PlaneScalar<S> f = c.at(r, col) * pinv;
            for (int j = col; j < d; ++j) c.at(r, j) = c.at(r, j) - f * c.at(col, j);
        }
    }
    return det2;
}

// ---------------------------------------------------------------------------

template <typename S>
struct CliffordMatrix {
    int n = 0, d = 0;
    std::vector<Multivector<S>> e;  // row-major

    CliffordMatrix() = default;
    CliffordMatrix(int n_, int d_) : n(n_), d(d_), e(std::size_t(d_) * d_, Multivector<S>(n_)) {}
    Multivector<S>& at(int i, int j) { return e[std::size_t(i) * d + j]; }
    const Multivector<S>& at(int i, int j) const { return e[std::size_t(i) * d + j]; }

    static CliffordMatrix identity(int n_, int d_) {
        CliffordMatrix m(n_, d_);
        for (int i = 0; i < d_; ++i) m.at(i, i).c[0] = S(1);
        return m;
    }

    CliffordMatrix& operator+=(const CliffordMatrix& o) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
        return *this;
    }
    CliffordMatrix& operator-=(const CliffordMatrix& o) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
        return *this;
    }
};

template <typename S>
CliffordMatrix<S> cm_mul(const CliffordMatrix<S>& x, const CliffordMatrix<S>& y) {
    CliffordMatrix<S> r(x.n, x.d);
    for (int i = 0; i < x.d; ++i)
        for (int k = 0; k < x.d; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (int j = 0; j < x.d; ++j)
                r.at(i, j) += geometric_product(x.at(i, k), y.at(k, j));
        }
    return r;
}

// Right module action: multiply every entry by a on the right.
template <typename S>
CliffordMatrix<S> cm_scale_right(const CliffordMatrix<S>& x, const Multivector<S>& a) {
    CliffordMatrix<S> r(x.n, x.d);
    for (std::size_t i = 0; i < x.e.size(); ++i) r.e[i] = geometric_product(x.e[i], a);
    return r;
}

template <typename S>
S cm_norm(const CliffordMatrix<S>& x) {  // max entry coefficient-norm
    S r(0);
    for (const auto& m : x.e) {
        S v = coeff_norm(m);
        if (v > r) r = v;
    }
    return r;
}

// ---------------------------------------------------------------------------

template <typename S>
struct CommutingParavectorOp {
    int n = 0;  // imaginary units
    int d = 0;  // matrix dimension
    std::vector<std::vector<S>> mats;  // T_0..T_n, each d*d row-major
    std::optional<std::vector<Paravector<S>>> eigenparavectors;  // joint-eigenvalue certificate

    const S& at(int mu, int i, int j) const { return mats[std::size_t(mu)][std::size_t(i) * d + j]; }
};

template <typename S>
bool validate_commuting(const CommutingParavectorOp<S>& T, double float_tol = 1e-12) {
    const int d = T.d;
    auto frob = [&](const std::vector<S>& m) {
        double r = 0;
        for (const auto& v : m) r += double(v) * double(v);
        return std::sqrt(r);
    };
    for (std::size_t p = 0; p < T.mats.size(); ++p)
        for (std::size_t q = p + 1; q < T.mats.size(); ++q) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    S acc(0);
                    for (int k = 0; k < d; ++k)
                        acc += T.mats[p][std::size_t(i) * d + k] * T.mats[q][std::size_t(k) * d + j] -
                               T.mats[q][std::size_t(i) * d + k] * T.mats[p][std::size_t(k) * d + j];
                    if constexpr (std::is_same_v<S, Rational>) {
                        if (acc != 0) return false;
                    } else {
                        double scale = frob(T.mats[p]) * frob(T.mats[q]);
                        if (std::fabs(double(acc)) > float_tol * std::max(scale, 1.0)) return false;
                    }
                }
        }
    return true;
}

// Embeds T as a d x d matrix of paravector multivectors.
template <typename S>
CliffordMatrix<S> op_as_matrix(const CommutingParavectorOp<S>& T, bool conjugate) {
    CliffordMatrix<S> r(T.n, T.d);
    for (int i = 0; i < T.d; ++i)
        for (int j = 0; j < T.d; ++j) {
            r.at(i, j).c[0] = T.at(0, i, j);
            for (int mu = 1; mu <= T.n; ++mu) {
                S v = T.at(mu, i, j);
                r.at(i, j).c[std::size_t(1) << (mu - 1)] = conjugate ? S(0) - v : v;
            }
        }
    return r;
}

// Q_{c,s}(T) = s^2 I - 2 s T_0 + sum_mu T_mu^2 with s = u + I v; entries lie
// in the plane of I, so only (u, v) enter.
template <typename S>
PlaneMat<S> qc_op(const S& u, const S& v, const CommutingParavectorOp<S>& T) {
    const int d = T.d;
    PlaneMat<S> r(d);
    PlaneScalar<S> s2{u * u - v * v, S(2) * u * v};
    PlaneScalar<S> m2s{S(-2) * u, S(-2) * v};
    std::vector<S> p(std::size_t(d) * d, S(0));
    for (int mu = 0; mu <= T.n; ++mu)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                S acc(0);
                for (int k = 0; k < d; ++k) acc += T.at(mu, i, k) * T.at(mu, k, j);
                p[std::size_t(i) * d + j] += acc;
            }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            PlaneScalar<S> v0{p[std::size_t(i) * d + j], S(0)};
            if (i == j) v0 = v0 + s2;
            r.at(i, j) = v0 + m2s * T.at(0, i, j);
        }
    return r;
}

template <typename S>
PlaneMat<S> qc_op_inv_pow(const S& u, const S& v, const CommutingParavectorOp<S>& T, long l,
                          S* det_abs2 = nullptr) {
    if (l < 1) throw std::domain_error("qc_op_inv_pow: l >= 1");
    PlaneMat<S> q = qc_op(u, v, T);
    S d2(0);
    PlaneMat<S> inv = pm_inverse(q, &d2);
    if (det_abs2) *det_abs2 = d2;
    return pm_pow(inv, l);
}

// Embed a plane matrix at the unit I into Clifford form.
template <typename S>
CliffordMatrix<S> plane_to_clifford(const PlaneMat<S>& m, const std::vector<S>& unit, int n) {
    CliffordMatrix<S> r(n, m.d);
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) {
            r.at(i, j).c[0] = m.at(i, j).re;
            for (int t = 0; t < n; ++t)
                r.at(i, j).c[std::size_t(1) << t] = m.at(i, j).im * unit[std::size_t(t)];
        }
    return r;
}

// x -> T, xbar -> Tbar substituted into an axial coefficient table.
template <typename S>
CliffordMatrix<S> axial_poly_op(const AxialPoly& p, const CommutingParavectorOp<S>& T) {
    CliffordMatrix<S> acc(T.n, T.d);
    if (p.t.empty()) return acc;
    long amax = 0, bmax = 0;
    for (const auto& tm : p.t) {
        amax = std::max(amax, tm.a);
        bmax = std::max(bmax, tm.b);
    }
    CliffordMatrix<S> tm_ = op_as_matrix(T, false), tb = op_as_matrix(T, true);
    std::vector<CliffordMatrix<S>> pa{CliffordMatrix<S>::identity(T.n, T.d)};
    std::vector<CliffordMatrix<S>> pb{CliffordMatrix<S>::identity(T.n, T.d)};
    for (long i = 1; i <= amax; ++i) pa.push_back(cm_mul(pa.back(), tm_));
    for (long i = 1; i <= bmax; ++i) pb.push_back(cm_mul(pb.back(), tb));
    for (const auto& term : p.t) {
        S c(0);
        if constexpr (std::is_same_v<S, Rational>)
            c = term.c;
        else
            c = term.c.get_d();
        CliffordMatrix<S> prod = cm_mul(pa[std::size_t(term.a)], pb[std::size_t(term.b)]);
        for (std::size_t i = 0; i < prod.e.size(); ++i) acc.e[i] += prod.e[i] * c;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Resolvent operators
// ---------------------------------------------------------------------------

enum class ResolventKind { S_left, K1L, K2, D, Dbar, F };

struct ResolventParams {
    long nu = 0, ell = 1;   // K1L / K2
    long beta = 1, m = 0;   // D / Dbar
};

// s = u + I v given by plane coordinates and the unit.
template <typename S>
CliffordMatrix<S> resolvent(ResolventKind kind, const ResolventParams& pr, const S& u, const S& v,
                            const std::vector<S>& unit, const CommutingParavectorOp<S>& T) {
    const int n = T.n, d = T.d;
    const long h = (n - 1) / 2;
    PlaneMat<S> qinv = [&] {
        PlaneMat<S> q = qc_op(u, v, T);
        return pm_inverse(q);
    }();
    auto s_minus_t0_pow = [&](long nu) {
        PlaneMat<S> m(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                m.at(i, j) = PlaneScalar<S>{S(0) - T.at(0, i, j), S(0)};
                if (i == j) m.at(i, j) = m.at(i, j) + PlaneScalar<S>{u, v};
            }
        return pm_pow(m, nu);
    };
    auto s_minus_tbar = [&] {
        CliffordMatrix<S> m = op_as_matrix(T, true);
        for (auto& mv : m.e) mv *= S(-1);
        for (int i = 0; i < d; ++i) {
            m.at(i, i).c[0] += u;
            for (int t = 0; t < n; ++t)
                m.at(i, i).c[std::size_t(1) << t] += v * unit[std::size_t(t)];
        }
        return m;
    };
    auto scaled = [&](CliffordMatrix<S> m, const Rational& c) {
        S cc(0);
        if constexpr (std::is_same_v<S, Rational>)
            cc = c;
        else
            cc = c.get_d();
        for (auto& mv : m.e) mv *= cc;
        return m;
    };
    switch (kind) {
        case ResolventKind::S_left:
            return cm_mul(s_minus_tbar(), plane_to_clifford(qinv, unit, n));
        case ResolventKind::K2:
            return plane_to_clifford(pm_mul(s_minus_t0_pow(pr.nu), pm_pow(qinv, pr.ell)), unit, n);
        case ResolventKind::K1L:
            return cm_mul(s_minus_tbar(),
                          plane_to_clifford(pm_mul(s_minus_t0_pow(pr.nu), pm_pow(qinv, pr.ell)),
                                            unit, n));
        case ResolventKind::F:
            return scaled(cm_mul(s_minus_tbar(), plane_to_clifford(pm_pow(qinv, h + 1), unit, n)),
                          structure_gamma(h, h));
        case ResolventKind::D:
        case ResolventKind::Dbar: {
            KernelSpec spec{n, kind == ResolventKind::D ? Letter::D : Letter::Dbar, pr.beta, pr.m};
            // Group the K1 terms so (s I - Tbar) multiplies a single plane sum.
            PlaneMat<S> acc1(d), acc2(d);
            for (const auto& tr : kernel_terms(spec)) {
                S c(0);
                if constexpr (std::is_same_v<S, Rational>)
                    c = tr.coef;
                else
                    c = tr.coef.get_d();
                PlaneMat<S> part = pm_mul(s_minus_t0_pow(tr.nu), pm_pow(qinv, tr.ell));
                PlaneMat<S>& dst = tr.kind == KKind::K1L ? acc1 : acc2;
                for (std::size_t i = 0; i < part.a.size(); ++i)
                    dst.a[i] = dst.a[i] + part.a[i] * c;
            }
            CliffordMatrix<S> r = cm_mul(s_minus_tbar(), plane_to_clifford(acc1, unit, n));
            r += plane_to_clifford(acc2, unit, n);
            return r;
        }
    }
    throw std::logic_error("resolvent: unknown kind");
}

// ---------------------------------------------------------------------------
// Contours and quadrature
// ---------------------------------------------------------------------------

struct SliceContour {
    std::vector<double> unit;  // I
    double center = 0;
    double radius = 1;
    long nodes = 256;          // power of two
    int orientation = +1;      // -1 for the inner circle of an annulus
};

void validate_contour(const SliceContour& c);

struct ContourNode {
    Paravector<double> s;
    Multivector<double> w;  // quadrature weight for (1/2pi) \oint . ds_I
    double u, v;
};

std::vector<ContourNode> contour_nodes(const SliceContour& c);

struct CalcDiagnostics {
    double min_det = 0;        // min over nodes of |det Q_{c,s}(T)|
    double doubling_delta = 0; // max-entry distance between N and 2N results
    long nodes = 0;
};

struct ContourError : std::domain_error {
    double min_det;
    explicit ContourError(const std::string& w, double md) : std::domain_error(w), min_det(md) {}
};

// f(s) = sum_nu s^nu alpha_nu with right Clifford coefficients.
using PolyCoeffs = std::vector<Multivector<double>>;

CliffordMatrix<double> functional_calculus(ResolventKind kind, const ResolventParams& pr,
                                           const PolyCoeffs& f,
                                           const CommutingParavectorOp<double>& T,
                                           const std::vector<SliceContour>& contours,
                                           CalcDiagnostics* diag = nullptr);

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

struct SpectrumSlice {
    std::vector<std::pair<double, double>> points;  // (u, v >= 0)
};

SpectrumSlice spectrum_slice_certified(const CommutingParavectorOp<double>& T);

struct SpectrumGrid {
    double umin = -4, umax = 4, vmin = 0, vmax = 4;
    int nu = 80, nv = 40;
    double threshold = 1e-6;  // advisory |det| cutoff after refinement
};

SpectrumSlice spectrum_slice_scan(const CommutingParavectorOp<double>& T, const SpectrumGrid& g);

// Coefficient of s^{-kappa-1} in the kernel series: a finite axial table equal
// to the image of the monomial x^kappa under D^beta Delta^m (resp. Dbar side).
AxialPoly monomial_image(Letter side, long beta, long m, long kappa, int n);

}  // namespace finespec
