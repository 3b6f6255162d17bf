#include "geomtv/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geomtv {

namespace {

// Survival sequence S[j] = P(W >= offset + j) for j = 0..size-1, summed
// back-to-front so small tail terms accumulate first.
std::vector<double> window_survival(const Pmf& p) {
  std::vector<double> surv(p.size());
  double acc = p.tail_mass();
  for (std::size_t j = p.size(); j > 0; --j) {
    acc += p.probs()[j - 1];
    surv[j - 1] = acc;
  }
  return surv;
}

}  // namespace

Pmf size_bias(const Pmf& p) {
  if (p.min_support() < 0)
    throw std::invalid_argument("size_bias requires non-negative support");
  std::vector<double> weighted(p.size());
  double mean = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    double k = static_cast<double>(p.offset() + static_cast<long long>(j));
    weighted[j] = k * p.probs()[j];
    mean += weighted[j];
  }
  if (mean <= 0.0) throw std::invalid_argument("size_bias requires mean > 0");
  for (double& x : weighted) x /= mean;
  return Pmf::from_window(std::move(weighted), p.offset(), 0.0);
}

Pmf equilibrium_pos(const Pmf& p) {
  if (p.min_support() < 1)
    throw std::invalid_argument("equilibrium_pos requires positive support");
  auto surv = window_survival(p);
  // P^e(k) = P(W >= k)/EW on k = 1..max_support; survival is 1 below the
  // window bottom.
  std::size_t below = static_cast<std::size_t>(p.min_support() - 1);
  std::vector<double> out(below + p.size());
  for (std::size_t j = 0; j < below; ++j) out[j] = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) out[below + j] = surv[j];
  if (p.tail_mass() > 0.0) out.push_back(p.tail_mass());
  double mean = 0.0;
  for (std::size_t j = out.size(); j > 0; --j) mean += out[j - 1];
  for (double& x : out) x /= mean;
  return Pmf::from_window(std::move(out), 1, 0.0);
}

Pmf equilibrium_nonneg(const Pmf& p) {
  if (p.min_support() < 0)
    throw std::invalid_argument(
        "equilibrium_nonneg requires non-negative support");
  if (p.min_support() > 0)
    throw std::invalid_argument(
        "equilibrium_nonneg requires P(0) > 0; shift and use equilibrium_pos");
  if (p.size() == 1 && p.tail_mass() == 0.0)
    throw std::invalid_argument("equilibrium_nonneg requires mean > 0");
  auto surv = window_survival(p);
  // P^{e0}(k) = P(W >= k+1)/EW on k = 0..max_support-1.
  std::vector<double> out(surv.begin() + 1, surv.end());
  if (p.tail_mass() > 0.0) out.push_back(p.tail_mass());
  double mean = 0.0;
  for (std::size_t j = out.size(); j > 0; --j) mean += out[j - 1];
  if (mean <= 0.0)
    throw std::invalid_argument("equilibrium_nonneg requires mean > 0");
  for (double& x : out) x /= mean;
  return Pmf::from_window(std::move(out), 0, 0.0);
}

SmoothnessValue smoothness(const Pmf& p) {
  SmoothnessValue v;
  std::size_t n = p.size();
  for (std::size_t j = 0; j <= n; ++j) {
    double cur = j < n ? p.probs()[j] : 0.0;
    double prev = j >= 1 ? p.probs()[j - 1] : 0.0;
    v.s1 += std::abs(cur - prev);
  }
  for (std::size_t j = 0; j <= n + 1; ++j) {
    double a = j < n ? p.probs()[j] : 0.0;
    double b = (j >= 1 && j - 1 < n) ? p.probs()[j - 1] : 0.0;
    double c = (j >= 2 && j - 2 < n) ? p.probs()[j - 2] : 0.0;
    v.s2 += std::abs(a - 2.0 * b + c);
  }
  return v;
}

double shift_overlap_u(const Pmf& p) {
  double u = 1.0 - 0.5 * smoothness(p).s1;
  return std::min(1.0, std::max(0.0, u));
}

double mattner_bound(std::span<const double> u_values) {
  double total = 0.25;
  for (double u : u_values) {
    if (!(u >= 0.0 && u <= 1.0))
      throw std::invalid_argument("shift overlap u outside [0,1]");
    total += u;
  }
  double bound = std::sqrt(2.0 / std::numbers::pi) / std::sqrt(total);
  return std::min(1.0, bound);
}

}  // namespace geomtv
