#pragma once

#include <vector>

#include "geomtv/bounds.hpp"
#include "geomtv/pmf.hpp"
#include "geomtv/rng.hpp"

namespace geomtv {

// Exact law of W = X_1 + ... + X_N with N ~ Ge(a) (start=1) or
// W = X_1 + ... + X_M with M ~ Ge^0(a) (start=0), X i.i.d. ~ x.
// Computed as the weighted sum of incrementally-built convolution powers;
// the weights of the dropped deep convolutions and any swept overflow go
// to tail_mass.
Pmf gsum_exact(const Pmf& x, double a, int start,
               double trunc_eps = kDefaultTruncEps);

/// Equilibrium coupling for geometric sums of independent summands with
/// common mean (the summand sequence cycles through `laws`):
///   W   = X_1 + ... + X_N,      N ~ Ge(a),
///   W^e = X_1 + ... + X_{N-1} + X_N^e,
/// so d = X_N - X_N^e, with the conditional smoothness given
/// F = sigma(N, X_N, X_N^e) bounded by the Mattner form
///   s1 = min(1, sqrt(2 / (pi (0.25 + (N-1) u)))),
///   s2 = min(1, 2 / (pi (0.25 + max(N/2 - 1, 0) u))),
/// where u is the worst shift overlap across the summand laws.
class GsumCouplingSampler {
 public:
  GsumCouplingSampler(std::vector<Pmf> laws, double a);

  CouplingSample operator()(SeededRng& rng) const;

  double common_mean() const { return mean_; }
  double shift_overlap() const { return u_; }
  double target_p() const { return a_ / mean_; }

 private:
  std::vector<Pmf> laws_;
  std::vector<PmfSampler> samplers_;
  std::vector<PmfSampler> eq_samplers_;
  double a_;
  double mean_;
  double u_;
};

}  // namespace geomtv
