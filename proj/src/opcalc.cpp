#include "finespec/opcalc.hpp"

#include <cmath>

namespace finespec {

void validate_contour(const SliceContour& c) {
    if (c.radius <= 0) throw std::invalid_argument("contour: radius must be positive");
    if (c.nodes < 4 || (c.nodes & (c.nodes - 1)) != 0)
        throw std::invalid_argument("contour: node count must be a power of two >= 4");
    double s = 0;
    for (double v : c.unit) s += v * v;
    if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("contour: I must be a unit 1-vector");
    if (c.orientation != 1 && c.orientation != -1)
        throw std::invalid_argument("contour: orientation must be +1 or -1");
}

std::vector<ContourNode> contour_nodes(const SliceContour& c) {
    validate_contour(c);
    const int n = int(c.unit.size());
    std::vector<ContourNode> out;
    out.reserve(std::size_t(c.nodes));
    for (long j = 0; j < c.nodes; ++j) {
        double th = 2.0 * M_PI * double(j) / double(c.nodes);
        double ct = std::cos(th), st = std::sin(th);
        ContourNode nd;
        nd.u = c.center + c.radius * ct;
        nd.v = c.radius * st;
        std::vector<double> xv(c.unit);
        for (auto& x : xv) x *= nd.v;
        nd.s = Paravector<double>(nd.u, xv);
        // ds_I = ds (-I) collapses to (r/N) e^{I theta} per node for the
        // 1/(2 pi) prefactor and trapezoid step.
        Multivector<double> w(n);
        double scale = double(c.orientation) * c.radius / double(c.nodes);
        w.c[0] = scale * ct;
        for (int t = 0; t < n; ++t) w.c[std::size_t(1) << t] = scale * st * c.unit[std::size_t(t)];
        nd.w = w;
        out.push_back(std::move(nd));
    }
    return out;
}

namespace {

double op_norm_bound(const CommutingParavectorOp<double>& T) {
    double r = 0;
    for (const auto& m : T.mats) {
        double f = 0;
        for (double v : m) f += v * v;
        r += std::sqrt(f);
    }
    return r;
}

CliffordMatrix<double> quadrature_pass(ResolventKind kind, const ResolventParams& pr,
                                       const PolyCoeffs& f,
                                       const CommutingParavectorOp<double>& T,
                                       const std::vector<SliceContour>& contours, long node_scale,
                                       double* min_det) {
    CliffordMatrix<double> acc(T.n, T.d);
    double md = std::numeric_limits<double>::infinity();
    for (const auto& base : contours) {
        SliceContour c = base;
        c.nodes *= node_scale;
        auto nodes = contour_nodes(c);
        for (const auto& nd : nodes) {
            double det2 = pm_det_abs2(qc_op(nd.u, nd.v, T));
            md = std::min(md, std::sqrt(det2));
        }
        for (const auto& nd : nodes) {
            CliffordMatrix<double> R = resolvent(kind, pr, nd.u, nd.v, c.unit, T);
            Multivector<double> fv(T.n);
            Paravector<double> spow = Paravector<double>::real(T.n, 1.0);
            for (std::size_t nu = 0; nu < f.size(); ++nu) {
                if (nu > 0) spow = plane_mul(spow, nd.s);
                fv += geometric_product(spow.to_mv(), f[nu]);
            }
            Multivector<double> g = geometric_product(nd.w, fv);
            acc += cm_scale_right(R, g);
        }
    }
    if (min_det) *min_det = md;
    return acc;
}

}  // namespace

CliffordMatrix<double> functional_calculus(ResolventKind kind, const ResolventParams& pr,
                                           const PolyCoeffs& f,
                                           const CommutingParavectorOp<double>& T,
                                           const std::vector<SliceContour>& contours,
                                           CalcDiagnostics* diag) {
    if (contours.empty()) throw std::invalid_argument("functional_calculus: no contour");
    // Spectral-safety screen before integrating.
    double md = std::numeric_limits<double>::infinity();
    for (const auto& c : contours)
        for (const auto& nd : contour_nodes(c))
            md = std::min(md, std::sqrt(pm_det_abs2(qc_op(nd.u, nd.v, T))));
    double scale = 0;
    for (const auto& c : contours) scale = std::max(scale, std::fabs(c.center) + c.radius);
    scale = (scale + op_norm_bound(T));
    scale *= scale;
    double floor = 1e-8 * std::pow(scale, double(T.d));
    if (md < floor)
        throw ContourError("contour rejected: node determinant " + std::to_string(md) +
                               " below spectral-safety floor " + std::to_string(floor),
                           md);
    double md1 = 0;
    CliffordMatrix<double> r1 = quadrature_pass(kind, pr, f, T, contours, 1, &md1);
    if (diag) {
        CliffordMatrix<double> r2 = quadrature_pass(kind, pr, f, T, contours, 2, nullptr);
        r2 -= r1;
        diag->min_det = md1;
        diag->doubling_delta = cm_norm(r2);
        diag->nodes = 0;
        for (const auto& c : contours) diag->nodes += c.nodes;
    }
    return r1;
}

SpectrumSlice spectrum_slice_certified(const CommutingParavectorOp<double>& T) {
    if (!T.eigenparavectors)
        throw std::invalid_argument("spectrum_slice_certified: no certificate");
    SpectrumSlice out;
    for (const auto& lam : *T.eigenparavectors)
        out.points.emplace_back(lam.x0, std::sqrt(lam.vec_norm_sq()));
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end(),
                                 [](auto a, auto b) {
                                     return std::fabs(a.first - b.first) < 1e-12 &&
                                            std::fabs(a.second - b.second) < 1e-12;
                                 }),
                     out.points.end());
    return out;
}

SpectrumSlice spectrum_slice_scan(const CommutingParavectorOp<double>& T, const SpectrumGrid& g) {
    auto det_at = [&](double u, double v) {
        return std::sqrt(pm_det_abs2(qc_op(u, v, T)));
    };
    const double du = (g.umax - g.umin) / g.nu, dv = (g.vmax - g.vmin) / g.nv;
    SpectrumSlice out;
    for (int i = 0; i <= g.nu; ++i)
        for (int j = 0; j <= g.nv; ++j) {
            double u = g.umin + i * du, v = g.vmin + j * dv;
            double d0 = det_at(u, v);
            bool local_min = true;
            for (int a = -1; a <= 1 && local_min; ++a)
                for (int b = -1; b <= 1 && local_min; ++b) {
                    if (!a && !b) continue;
                    double uu = u + a * du, vv = std::max(0.0, v + b * dv);
                    if (uu < g.umin - 1e-12 || uu > g.umax + 1e-12 || vv > g.vmax + 1e-12) continue;
                    if (det_at(uu, vv) < d0) local_min = false;
                }
            if (!local_min) continue;
            // local refinement by shrinking grid steps
            double bu = u, bv = v, su = du, sv = dv, bd = d0;
            for (int round = 0; round < 24; ++round) {
                double tu = bu, tv = bv;
                for (int a = -2; a <= 2; ++a)
                    for (int b = -2; b <= 2; ++b) {
                        double uu = bu + a * su / 2, vv = std::max(0.0, bv + b * sv / 2);
                        double dd = det_at(uu, vv);
                        if (dd < bd) {
                            bd = dd;
                            tu = uu;
                            tv = vv;
                        }
                    }
                bu = tu;
                bv = tv;
                su /= 2;
                sv /= 2;
            }
            if (bd <= g.threshold) out.points.emplace_back(bu, bv);
        }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end(),
                                 [](auto a, auto b) {
                                     return std::fabs(a.first - b.first) < 1e-6 &&
                                            std::fabs(a.second - b.second) < 1e-6;
                                 }),
                     out.points.end());
    return out;
}

AxialPoly monomial_image(Letter side, long beta, long m, long kappa, int n) {
    if (kappa < 0) throw std::domain_error("monomial_image: kappa >= 0");
    KernelSpec spec{n, side, beta, m};
    AxialPoly acc;
    for (const auto& tr : kernel_terms(spec)) {
        for (long j = 0; j <= tr.nu; ++j) {
            long k = kappa + tr.nu - j;  // s-exponent nu - j - k - 1 = -kappa - 1
            AxialPoly poly = tr.kind == KKind::K2 ? h_poly(tr.ell, k) : p_poly(tr.ell - 1, k);
            if (poly.is_zero()) continue;
            Rational c = tr.coef * Rational(binom(tr.nu, j));
            if (j % 2) c = -c;
            for (long it = 0; it < j; ++it) poly = axial_mul_x0(poly);
            acc = axial_add(acc, axial_scale(std::move(poly), c));
        }
    }
    return acc;
}

}  // namespace finespec
