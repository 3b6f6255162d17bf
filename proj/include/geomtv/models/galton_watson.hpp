#pragma once

#include <cstdint>
#include <vector>

#include "geomtv/pmf.hpp"
#include "geomtv/rng.hpp"

namespace geomtv {

struct OffspringLaw {
  Pmf pmf;         // on non-negative integers
  double mean = 0.0;
  double variance = 0.0;
  bool smooth = false;  // tv(Z1, Z1+1) < 1

  static OffspringLaw from_pmf(Pmf p);

  // Criticality gate for the conditioned-generation experiments.
  void require_critical(double tol = 1e-9) const;
};

// Law of Z_n for Z_0 = 1, computed by iterating
//   law(Z_j)(k) = sum_m P(Z_{j-1} = m) (offspring pmf)^{*m}(k)
// with convolution powers cached and mass above window_top swept into
// tail_mass. Throws if the final tail exceeds tail_budget.
Pmf gw_generation(const OffspringLaw& offspring, int n, long long window_top,
                  double tail_budget = 1e-9);

// Doubles the window until the tail budget holds.
Pmf gw_generation_auto(const OffspringLaw& offspring, int n,
                       double tail_budget = 1e-9);

struct SpineSample {
  long long s_n = 0;  // generation-n size of the size-biased tree
  long long l_n = 0;  // strictly left of the spine vertex
  long long r_n = 0;  // right of the spine vertex, inclusive
};

/// Size-biased spine tree: each spine vertex gets a size-biased offspring
/// count, the next spine vertex is uniform among them, and every sibling
/// roots an independent ordinary branching process whose generation-n
/// descendants are accumulated on its side of the spine.
class GwSpineSampler {
 public:
  GwSpineSampler(OffspringLaw offspring, int n,
                 std::uint64_t particle_budget = 100'000'000);

  SpineSample operator()(SeededRng& rng) const;

 private:
  // Descendants in `depth` generations of one individual; counts work
  // against the shared budget.
  long long subtree_descendants(int depth, SeededRng& rng,
                                std::uint64_t& budget) const;

  OffspringLaw offspring_;
  PmfSampler offspring_sampler_;
  PmfSampler size_bias_sampler_;
  int n_;
  std::uint64_t particle_budget_;
};

}  // namespace geomtv
