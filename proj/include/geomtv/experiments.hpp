#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geomtv/models/galton_watson.hpp"
#include "geomtv/report.hpp"

namespace geomtv {

// Exact tv(L(W_n), Ge0(1/2)) per n with the hard Theorem-6 bound 1/n, plus
// the coupling corollary row 2(1-p)P(N=n) = 1/n.
std::vector<BoundReport> ua_experiment(std::span<const long long> n_grid);

// Exact tv(condition_positive(Z_n), Ge(2/(sigma^2 n))) per n;
// empirical_c = tv * n^{1/4} / log n. Soft rows: the paper's constant is
// unspecified.
std::vector<BoundReport> gw_tv_experiment(const OffspringLaw& offspring,
                                          std::span<const int> n_grid,
                                          double tail_budget = 1e-9);

// Exact tv(L(W_{n,i}), Ge(1/E W_{n,i})) per i; empirical_c = i * tv.
// Includes the product-formula mean identity as a hard row per i.
std::vector<BoundReport> pa_fixed_vertex_experiment(
    long long n, std::span<const long long> i_grid);

// Exact tv(L(W_{n,I}), Yule-Simon) per n; empirical_c = n * tv / log n.
std::vector<BoundReport> pa_mixture_experiment(
    std::span<const long long> n_grid);

// Exact geometric-sum law vs the Theorem-3/4 moment bounds (hard rows) and
// a Monte Carlo Theorem-1 RHS estimate (soft row).
std::vector<BoundReport> gsum_experiment(const Pmf& x, double a, int start,
                                         std::size_t reps, unsigned shards,
                                         std::uint64_t seed);

// Theorem 1/2 validity sweep over random pmfs: every row must satisfy
// lhs <= rhs + 1e-9 with the exact independent coupling and
// sigma(D)-conditional smoothness.
std::vector<BoundReport> validity_sweep(std::size_t count,
                                        std::uint64_t seed);

// Uniformly random pmf for sweeps: support width 1..12, ~30% interior
// zeros. positive=true starts at offset 1..3, else at 0 with P(0) >= 0.05.
Pmf random_sweep_pmf(SeededRng& rng, bool positive);

}  // namespace geomtv
