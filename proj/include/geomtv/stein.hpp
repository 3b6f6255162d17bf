#pragma once

#include <vector>

#include "geomtv/pmf.hpp"

namespace geomtv {

/// Solution f = f_{B,p} of the geometric Stein equation
///   q f(k) - f(k-1) = 1_{k in B} - Ge(p){B},  k >= 1,  f(0) = 0,
/// tabulated on the working window [0, K].
struct SteinSolution {
  std::vector<long long> target_set;  // sorted, deduplicated B
  double p = 0.5;
  std::vector<double> values;  // f(0..K)
  double ge_mass_b = 0.0;      // Ge(p){B}

  long long window_top() const {
    return static_cast<long long>(values.size()) - 1;
  }
};

// Closed-form evaluation f(k) = sum_{i in B} q^{i-1}
//                               - sum_{i in B, i >= k+1} q^{i-k-1}.
// Requires B within {1,...}, p in (0,1], K >= max(B) (K >= 1 when B empty).
SteinSolution stein_solve(const std::vector<long long>& target_set, double p,
                          long long window_top);

// Window chosen so geometric tails past it are below trunc_eps.
long long stein_default_window(const std::vector<long long>& target_set,
                               double p, double trunc_eps = kDefaultTruncEps);

struct SteinGradientBounds {
  double grad_sup = 0.0;  // sup_{1<=k<=K} |f(k)-f(k-1)|
  double f_sup = 0.0;     // sup_{0<=k<=K} |f(k)|
  bool singleton = false;
};

// Scans the window; asserts grad_sup <= 1 (+1e-12) and, for singleton B,
// f_sup <= 1.
SteinGradientBounds stein_gradient_bounds(const SteinSolution& sol);

// max_k |q f(k) - f(k-1) - (1_{k in B} - Ge(p){B})| over 1 <= k <= K.
double stein_max_residual(const SteinSolution& sol);

// Shifted form: max_k |q f(k+1) - f(k) - (1_{k in B-1} - Ge0(p){B-1})|
// over 0 <= k <= K-1.
double stein_max_shifted_residual(const SteinSolution& sol);

}  // namespace geomtv
