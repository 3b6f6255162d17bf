#pragma once

#include "geomtv/pmf.hpp"

namespace geomtv {

// Exact law of the in-degree of a uniformly chosen node in the uniform
// attachment graph on n nodes: W = X_1 + ... + X_N with independent
// X_i ~ Bern(1/(n-i+1)) and N uniform on {1,...,n}, computed by dynamic
// programming over the partial Bernoulli sums.
Pmf ua_degree_dist(long long n);

// Mean of W by the harmonic double sum (1/n) sum_m sum_{i<=m} 1/(n-i+1);
// an independent route used to cross-check the DP.
double ua_mean_oracle(long long n);

}  // namespace geomtv
