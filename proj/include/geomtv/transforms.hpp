#pragma once

#include <span>

#include "geomtv/pmf.hpp"

namespace geomtv {

/// First and second order smoothness of an integer law.
/// s1 = sum_k |P(k)-P(k-1)| = 2 * tv(L(W+1), L(W)) in [0,2];
/// s2 = sum_k |P(k)-2P(k-1)+P(k-2)| in [0,4].
/// These closed forms are the sup over ||g|| <= 1 of |E Delta g(W)| and
/// |E Delta^2 g(W)|: the supremum is attained at the sign function of the
/// difference sequence.
struct SmoothnessValue {
  double s1 = 0.0;
  double s2 = 0.0;
};

// Size-bias transform P^s(k) = k P(k) / E W. Requires non-negative
// support and positive mean.
Pmf size_bias(const Pmf& p);

// Discrete equilibrium distribution of a positive law:
// P^e(k) = P(W >= k) / E W for k >= 1. The window mean normalizes, so the
// result sums to exactly 1; for truncated inputs this folds the unknown
// super-window survival proportionally into the window (error of order
// tail_mass).
Pmf equilibrium_pos(const Pmf& p);

// Discrete equilibrium distribution of a non-negative law with P(0) > 0:
// P^{e0}(k) = P(W >= k+1) / E W for k >= 0.
Pmf equilibrium_nonneg(const Pmf& p);

SmoothnessValue smoothness(const Pmf& p);

// u = 1 - tv(L(X), L(X+1)) = 1 - s1/2, in [0,1].
double shift_overlap_u(const Pmf& p);

// Mattner-Roos shift bound for a sum of independent integer variables:
// min(1, sqrt(2/pi) * (1/4 + sum u_i)^{-1/2}).
double mattner_bound(std::span<const double> u_values);

}  // namespace geomtv
