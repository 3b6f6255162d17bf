#pragma once

#include <vector>

#include "geomtv/pmf.hpp"
#include "geomtv/rng.hpp"

namespace geomtv {

// Exact law of the total degree W_{n,i} of vertex i in the preferential
// attachment graph on n vertices, by the degree Markov chain
//   W_{i,i} = 1 + Bern(1/(2i-1)),
//   W_{j,i} = W_{j-1,i} + Bern(W_{j-1,i}/(2j-1)),  i < j <= n.
Pmf pa_degree_dist(long long n, long long i);

// E W_{n,i} = prod_{j=i}^{n} 2j/(2j-1).
double pa_mean_degree(long long n, long long i);

// Law of W_{n,I} for I uniform on {1,...,n}.
Pmf pa_mixture_dist(long long n);

// max_{1<=k<=kmax} | integral_0^1 (1-sqrt(u))^{k-1} sqrt(u) du
//                    - 4/(k(k+1)(k+2)) |
// by adaptive Gauss-Kronrod quadrature.
double yule_mixture_check(long long kmax, double quad_tol = 1e-11);

struct PaCouplingDraw {
  long long w_tilde = 0;  // original-chain degree of vertex i at time n
  long long w_k = 0;      // conditioned-chain degree (equilibrium + 1)
  long long k = 0;        // sampled conditioning index
  bool neq = false;       // w_tilde != w_k
};

/// Shared-uniform coupling of the preferential attachment degree chain
/// with its size-bias conditioned version: K is drawn with
/// P(K=k) = E X_{k,i} / (E W_{n,i} - 1), both chains consume one uniform
/// per step j, with thresholds W/(2j) vs W~/(2j-1) before step K, a forced
/// zero at j = K, and identical thresholds /(2j-1) after. W^K_{n,i} - 1 is
/// then equilibrium-distributed w.r.t. W_{n,i} - 1.
class PaCouplingSampler {
 public:
  PaCouplingSampler(long long n, long long i);

  PaCouplingDraw operator()(SeededRng& rng) const;

 private:
  long long n_;
  long long i_;
  std::vector<double> k_cdf_;  // over k = i..n
};

}  // namespace geomtv
