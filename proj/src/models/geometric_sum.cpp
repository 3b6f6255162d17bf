#include "geomtv/models/geometric_sum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geomtv/transforms.hpp"

namespace geomtv {

Pmf gsum_exact(const Pmf& x, double a, int start, double trunc_eps) {
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("gsum parameter outside (0,1]");
  if (start != 0 && start != 1)
    throw std::invalid_argument("gsum start must be 0 or 1");
  if (start == 1 && x.min_support() < 1)
    throw std::invalid_argument("gsum with N >= 1 needs positive summands");
  if (x.min_support() < 0)
    throw std::invalid_argument("gsum summands must be non-negative");

  // Result window grows as needed up to the hard cap; mass convolved past
  // the cap is swept into the tail.
  std::vector<double> acc;
  double tail = 0.0;

  std::vector<double> power{1.0};  // X^{*m} window, from power_lo
  long long power_lo = 0;
  double power_tail = 0.0;

  double weight = start == 1 ? a : a;  // P(count = m) iterates below
  double remaining = 1.0;              // mass of counts not yet applied
  long long m = 0;

  auto apply = [&](double w) {
    std::size_t need = static_cast<std::size_t>(power_lo) + power.size();
    if (need > kHardSupportCap)
      throw std::length_error("gsum truncation budget exceeded at hard cap");
    if (acc.size() < need) acc.resize(need, 0.0);
    for (std::size_t j = 0; j < power.size(); ++j)
      acc[static_cast<std::size_t>(power_lo) + j] += w * power[j];
    tail += w * power_tail;
  };

  if (start == 0) {
    // m = 0 term: point mass at 0.
    apply(weight);
    remaining -= weight;
    weight *= 1.0 - a;
  }
  while (remaining > trunc_eps * 0.5 && weight > 0.0) {
    // advance to X^{*(m+1)}
    ++m;
    std::size_t n = power.size() + x.size() - 1;
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < power.size(); ++i) {
      double pi = power[i];
      if (pi == 0.0) continue;
      for (std::size_t j = 0; j < x.size(); ++j) next[i + j] += pi * x.probs()[j];
    }
    power_tail = power_tail + x.tail_mass() - power_tail * x.tail_mass();
    power_lo += x.min_support();
    if (static_cast<std::size_t>(power_lo) + n > kHardSupportCap) {
      // Sweep everything that no longer fits.
      std::size_t keep = kHardSupportCap > static_cast<std::size_t>(power_lo)
                             ? kHardSupportCap - static_cast<std::size_t>(power_lo)
                             : 0;
      for (std::size_t j = keep; j < n; ++j) power_tail += next[j];
      next.resize(keep);
      if (next.empty())
        throw std::length_error("gsum truncation budget exceeded at hard cap");
    }
    power = std::move(next);
    apply(weight);
    remaining -= weight;
    weight *= 1.0 - a;
    if (m > static_cast<long long>(kHardSupportCap))
      throw std::length_error("gsum count truncation failed to converge");
  }
  tail += std::max(0.0, remaining);
  return Pmf::from_window(std::move(acc), 0, tail);
}

GsumCouplingSampler::GsumCouplingSampler(std::vector<Pmf> laws, double a)
    : laws_(std::move(laws)), a_(a) {
  if (laws_.empty()) throw std::invalid_argument("gsum sampler needs laws");
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("gsum parameter outside (0,1]");
  mean_ = moment(laws_[0], 1);
  u_ = 1.0;
  for (const Pmf& law : laws_) {
    if (law.min_support() < 1)
      throw std::invalid_argument("gsum sampler needs positive summands");
    double m = moment(law, 1);
    if (std::abs(m - mean_) > 1e-9)
      throw std::invalid_argument("gsum summand means differ beyond 1e-9");
    u_ = std::min(u_, shift_overlap_u(law));
    samplers_.emplace_back(law);
    eq_samplers_.emplace_back(equilibrium_pos(law));
  }
}

CouplingSample GsumCouplingSampler::operator()(SeededRng& rng) const {
  long long n = rng.geometric(a_, 1);
  long long w = 0;
  long long x_last = 0;
  std::size_t last = 0;
  for (long long i = 1; i < n; ++i) {
    std::size_t which = static_cast<std::size_t>((i - 1) % laws_.size());
    w += samplers_[which].draw(rng);
  }
  // X_N and X_N^e share one uniform: the comonotone coupling keeps both
  // marginals and collapses D to 0 at the geometric fixed point.
  last = static_cast<std::size_t>((n - 1) % static_cast<long long>(laws_.size()));
  double u_shared = rng.next_real01();
  x_last = samplers_[last].invert(u_shared);
  w += x_last;
  long long x_eq = eq_samplers_[last].invert(u_shared);
  CouplingSample s;
  s.w = w;
  s.w_eq = w - x_last + x_eq;
  s.d = x_last - x_eq;
  double nm1 = static_cast<double>(n - 1);
  s.s1 = std::min(
      1.0, std::sqrt(2.0 / (std::numbers::pi * (0.25 + nm1 * u_))));
  double half = std::max(0.0, static_cast<double>(n) / 2.0 - 1.0);
  s.s2 = std::min(1.0, 2.0 / (std::numbers::pi * (0.25 + half * u_)));
  s.in_a = true;
  return s;
}

}  // namespace geomtv
