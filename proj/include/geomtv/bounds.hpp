#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geomtv/pmf.hpp"

namespace geomtv {

/// One Monte Carlo draw of an equilibrium coupling. The model that owns
/// the coupling supplies the per-sample conditional smoothness values s1,
/// s2 from whatever conditional law it knows (e.g. the Mattner bound given
/// N for geometric sums), and the event indicator in_a.
struct CouplingSample {
  long long w = 0;
  long long w_eq = 0;
  long long d = 0;  // w - w_eq
  double s1 = 0.0;  // conditional smoothness, in [0,2]
  double s2 = 0.0;  // second order, in [0,4]
  bool in_a = true;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// E{|D| S_l 1_A} + 2 P(A^c), estimated from the per-sample composite
// |d| s_l 1_A + 2 1_{A^c}. l in {1,2}.
McEstimate thm1_rhs(std::span<const CouplingSample> samples, int l);

// (1-p) E{|D| S_l 1_A} + 2 (1-p) P(A^c).
McEstimate thm2_rhs(std::span<const CouplingSample> samples, int l, double p);

// p * E|D|.
double eq9_rhs(double p, double mean_abs_d);

// 2 (1-p) P(W != W^{e0}).
double eq12_rhs(double p, double prob_neq);

struct CConstants {
  double c1 = 1.0;
  double c2 = 1.0;
};

// C1 = min{1, a[1 + (-2/(u log(1-a)))^{1/2}]},
// C2 = min{1, a[1 - 6 log(a)/(pi u)]}; the a = 1 endpoint is taken by
// continuity as C1 = C2 = 1. u = 0 is rejected.
CConstants c_constants(double a, double u);

struct GsumBounds {
  double rhs_tv = 0.0;
  double rhs_local = 0.0;
  double p = 1.0;  // target geometric parameter
};

// Geometric-sum moment bounds. positive=true: C_l (mu2/2 + 1/2 + mu) with
// p = a/mu; positive=false: C_l (mu2/(2 mu) - 1/2) with
// p = a/(a + mu(1-a)). u = 0 is allowed here and resolved by the
// continuity limit C_l = 1.
GsumBounds gsum_bounds(double a, double u, double mu, double mu2,
                       bool positive);

// tv(Ge(p), Ge(p-eps)) <= eps/p.
double geo_param_tv_bound(double p, double eps);

/// Exact evaluation of the main-theorem right-hand sides for the
/// independent coupling of W ~ P and its equilibrium transform.
///
/// The theorems require a sigma-algebra F containing sigma(D); the
/// smallest exactly-computable choice is F = sigma(D) itself, giving
///   rhs_cond_l = E{ |D| S_l(W | D) },
/// computed from the finite joint law. The unconditional products
/// E|D| * S_l(W) are also reported; they are not licensed by the theorems
/// (conditioning on D is lost) and provably fail for some non-negative
/// laws, but hold empirically in the positive/Theorem-1 regime.
struct ValiditySweepRow {
  double p = 1.0;        // geometric target parameter
  double mean_abs_d = 0.0;
  double s1 = 0.0;       // unconditional smoothness of W
  double s2 = 0.0;
  double rhs_cond_1 = 0.0;  // E{|D| S_1(W|D)}
  double rhs_cond_2 = 0.0;  // E{|D| S_2(W|D)}
  DistanceTriple dist_w;    // W vs geometric target
  DistanceTriple dist_eq;   // equilibrium vs geometric target
};

// Theorem 1 instance: P positive, target Ge(1/EW), W^e = equilibrium_pos(P).
ValiditySweepRow validity_row_positive(const Pmf& p,
                                       double ge_eps = 1e-14);

// Theorem 2 instance: P non-negative with P(0) > 0, target Ge0(p) with
// p = 1/(1+EW), W^{e0} = equilibrium_nonneg(P).
ValiditySweepRow validity_row_nonneg(const Pmf& p, double ge_eps = 1e-14);

}  // namespace geomtv
