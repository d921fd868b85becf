#pragma once

// Truncated series expansions of Q^{-l} and of the fine-structure kernels in
// powers of s, with explicit tail bounds from the binomial majorant
// |H_l^k(x)| <= C(k, 2l-1) |x|^{k-2l+1}; tails are summed in closed form via
// the negative-binomial generating function (full sum minus computed partial).

#include "finespec/kernels.hpp"

namespace finespec {

struct SeriesResult {
    Multivector<double> value;
    long K = 0;           // truncation order (series summed for k <= K)
    double tail_bound = 0;
};

// sum_{k > K} C(k, r) t^k, t in [0,1).
double tail_T(double t, long r, long K);

SeriesResult series_q_inv_pow(const Paravector<double>& s, const Paravector<double>& x, long l,
                              long K);
SeriesResult series_k_kernel(KKind kind, const Paravector<double>& s, const Paravector<double>& x,
                             long nu, long l, long K);
SeriesResult series_kernel(const KernelSpec& spec, const Paravector<double>& s,
                           const Paravector<double>& x, long K);

// Smallest K whose computed tail bound is <= target (throws past k_cap).
long series_truncation_q(const Paravector<double>& s, const Paravector<double>& x, long l,
                         double target, long k_cap = 4096);
long series_truncation_kernel(const KernelSpec& spec, const Paravector<double>& s,
                              const Paravector<double>& x, double target, long k_cap = 4096);

}  // namespace finespec
