#include "geomtv/models/galton_watson.hpp"

#include <cmath>
#include <stdexcept>

#include "geomtv/transforms.hpp"

namespace geomtv {

OffspringLaw OffspringLaw::from_pmf(Pmf p) {
  if (p.min_support() < 0)
    throw std::invalid_argument("offspring law must be non-negative");
  OffspringLaw law;
  law.mean = moment(p, 1);
  law.variance = moment(p, 2) - law.mean * law.mean;
  law.smooth = shift_overlap_u(p) > 0.0;
  law.pmf = std::move(p);
  return law;
}

void OffspringLaw::require_critical(double tol) const {
  if (std::abs(mean - 1.0) > tol)
    throw std::invalid_argument("offspring not critical: mean = " +
                                std::to_string(mean));
}

Pmf gw_generation(const OffspringLaw& offspring, int n, long long window_top,
                  double tail_budget) {
  if (n < 0) throw std::invalid_argument("generation index negative");
  if (window_top < 1) throw std::invalid_argument("window too small");
  std::size_t width = static_cast<std::size_t>(window_top) + 1;
  if (width > kHardSupportCap)
    throw std::length_error("gw window exceeds hard support cap");

  const Pmf& x = offspring.pmf;
  // powers[m] = (offspring)^{*m} restricted to [0, window_top];
  // power_tails[m] tracks everything swept past the window.
  std::vector<std::vector<double>> powers(width);
  std::vector<double> power_tails(width, 0.0);
  powers[0].assign(width, 0.0);
  powers[0][0] = 1.0;
  for (std::size_t m = 1; m < width; ++m) {
    powers[m].assign(width, 0.0);
    const auto& prev = powers[m - 1];
    double swept = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      double pi = prev[i];
      if (pi == 0.0) continue;
      for (std::size_t j = 0; j < x.size(); ++j) {
        std::size_t k =
            i + static_cast<std::size_t>(x.min_support()) + j;
        double mass = pi * x.probs()[j];
        if (k < width)
          powers[m][k] += mass;
        else
          swept += mass;
      }
    }
    power_tails[m] =
        power_tails[m - 1] + swept + (1.0 - power_tails[m - 1]) * x.tail_mass();
  }

  std::vector<double> law(width, 0.0);
  law[1] = 1.0;  // Z_0 = 1
  double tail = 0.0;
  for (int gen = 0; gen < n; ++gen) {
    std::vector<double> next(width, 0.0);
    double next_tail = tail;  // states beyond the window stay unassigned
    for (std::size_t m = 0; m < width; ++m) {
      double pm = law[m];
      if (pm == 0.0) continue;
      const auto& pw = powers[m];
      for (std::size_t k = 0; k < width; ++k) next[k] += pm * pw[k];
      next_tail += pm * power_tails[m];
    }
    law = std::move(next);
    tail = next_tail;
  }
  if (tail > tail_budget)
    throw std::runtime_error("gw generation tail exceeds budget; widen window");
  return Pmf::from_window(std::move(law), 0, tail);
}

Pmf gw_generation_auto(const OffspringLaw& offspring, int n,
                       double tail_budget) {
  // Conditioned on survival Z_n is roughly geometric with mean
  // ~ sigma^2 n / 2, so a window of a few such scales times log(1/budget)
  // usually lands on the first try; the doubling retry covers the rest.
  double scale =
      std::max(1.0, offspring.variance * n / 2.0 + offspring.mean * n * 0.1);
  double digits = std::log(1.0 / std::max(tail_budget, 1e-300));
  long long top = 64 + static_cast<long long>(std::ceil(scale * digits));
  for (;;) {
    try {
      return gw_generation(offspring, n, top, tail_budget);
    } catch (const std::runtime_error&) {
      top *= 2;
      if (static_cast<std::size_t>(top) > kHardSupportCap) throw;
    }
  }
}

GwSpineSampler::GwSpineSampler(OffspringLaw offspring, int n,
                               std::uint64_t particle_budget)
    : offspring_(std::move(offspring)),
      offspring_sampler_(offspring_.pmf),
      size_bias_sampler_(size_bias(offspring_.pmf)),
      n_(n),
      particle_budget_(particle_budget) {
  if (n < 0) throw std::invalid_argument("generation index negative");
  offspring_.require_critical();
}

long long GwSpineSampler::subtree_descendants(int depth, SeededRng& rng,
                                              std::uint64_t& budget) const {
  long long pop = 1;
  for (int d = 0; d < depth && pop > 0; ++d) {
    long long next = 0;
    for (long long i = 0; i < pop; ++i) {
      if (budget == 0)
        throw std::runtime_error("gw spine particle budget exhausted");
      --budget;
      next += offspring_sampler_.draw(rng);
    }
    pop = next;
  }
  return pop;
}

SpineSample GwSpineSampler::operator()(SeededRng& rng) const {
  std::uint64_t budget = particle_budget_;
  SpineSample out;
  out.r_n = 1;  // the spine vertex v_n itself
  for (int j = 1; j <= n_; ++j) {
    // v_{j-1} gets a size-biased offspring count; v_j is uniform among them.
    long long children = size_bias_sampler_.draw(rng);
    long long pick = rng.uniform_int(1, children);
    int depth = n_ - j;  // siblings live in generation j
    for (long long c = 1; c <= children; ++c) {
      if (c == pick) continue;
      long long desc = subtree_descendants(depth, rng, budget);
      if (c < pick)
        out.l_n += desc;
      else
        out.r_n += desc;
    }
  }
  out.s_n = out.l_n + out.r_n;
  return out;
}

}  // namespace geomtv
