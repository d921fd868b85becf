#pragma once

// Exact symbolic differentiation of Clifford-valued rational functions in
// x0..xn.  Ground truth for the closed-form kernels: everything here is
// quotient-rule calculus on exact rationals, no kernel formulas.

#include <vector>

#include "finespec/cliffpoly.hpp"

namespace finespec {

enum class Letter { D, Dbar, Lap };
using OperatorWord = std::vector<Letter>;

// Left action of one operator letter.
//   D    = d/dx0 + sum_i e_i d/dx_i
//   Dbar = d/dx0 - sum_i e_i d/dx_i
//   Lap  = sum_mu d^2/dx_mu^2
CliffordRationalFn apply_letter(const CliffordRationalFn& f, Letter L);
CliffordRationalFn apply_word(CliffordRationalFn f, const OperatorWord& w);

// Lap^m then side^beta.
CliffordRationalFn apply_dirac_laplace(const CliffordRationalFn& f, long beta, long m,
                                       Letter side);

// ---- symbolic building blocks -------------------------------------------

// Q_{c,s}(x) = s^2 - 2 x0 s + |x|^2 as a paravector-valued polynomial.
CliffordPoly sym_q(const Paravector<Rational>& s, int n);
// |Q_{c,s}(x)|^2 = Q Qbar, real-valued.
CliffordPoly sym_qnorm(const Paravector<Rational>& s, int n);
// x^k as a polynomial (paravector-valued).
CliffordPoly sym_x_power(int n, long k);

// S_L^{-1}(s,x) = (s - xbar) Qbar / |Q|^2  (form II, exact).
CliffordRationalFn build_cauchy_kernel_symbolic(const Paravector<Rational>& s, int n);
// Form I: -(x^2 - 2 x Re(s) + |s|^2)^{-1} (x - sbar), with the paravector
// inverse written conj/|.|^2.
CliffordRationalFn build_cauchy_kernel_symbolic_form1(const Paravector<Rational>& s, int n);

// K^{1,L}_{nu,l} = (s - xbar)(s - x0)^nu Q^{-l};  K^2_{nu,l} = (s - x0)^nu Q^{-l}.
CliffordRationalFn sym_k1(const Paravector<Rational>& s, int n, long nu, long l);
CliffordRationalFn sym_k2(const Paravector<Rational>& s, int n, long nu, long l);

// (s - x0)^p for integer p (negative p via conj over the real norm).
CliffordRationalFn sym_s_minus_x0_power(const Paravector<Rational>& s, int n, long p);

// ---- checks ---------------------------------------------------------------

// Axial-form test: extract A = (f(u+Iv)+f(u-Iv))/2, B = -I(f(u+Iv)-f(u-Iv))/2
// at two units and require exact agreement at every sample.
bool axiality_check(const CliffordRationalFn& f,
                    const std::vector<std::pair<Rational, Rational>>& samples,
                    const std::vector<Rational>& I1, const std::vector<Rational>& I2);

}  // namespace finespec
