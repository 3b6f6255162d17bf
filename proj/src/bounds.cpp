#include "geomtv/bounds.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "geomtv/transforms.hpp"

namespace geomtv {

namespace {

McEstimate composite_mean(std::span<const CouplingSample> samples, int l,
                          double factor) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  if (l != 1 && l != 2) throw std::invalid_argument("smoothness order in {1,2}");
  double sum = 0.0, sumsq = 0.0;
  for (const CouplingSample& s : samples) {
    double g = s.in_a
                   ? std::abs(static_cast<double>(s.d)) * (l == 1 ? s.s1 : s.s2)
                   : 2.0;
    sum += g;
    sumsq += g * g;
  }
  double n = static_cast<double>(samples.size());
  double mean = sum / n;
  double var = std::max(0.0, sumsq / n - mean * mean);
  McEstimate out;
  out.value = factor * mean;
  out.std_error = factor * std::sqrt(var / n);
  return out;
}

}  // namespace

McEstimate thm1_rhs(std::span<const CouplingSample> samples, int l) {
  return composite_mean(samples, l, 1.0);
}

McEstimate thm2_rhs(std::span<const CouplingSample> samples, int l, double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("thm2 parameter outside (0,1]");
  return composite_mean(samples, l, 1.0 - p);
}

double eq9_rhs(double p, double mean_abs_d) {
  if (!(p > 0.0 && p <= 1.0) || mean_abs_d < 0.0)
    throw std::invalid_argument("eq9 inputs out of range");
  return p * mean_abs_d;
}

double eq12_rhs(double p, double prob_neq) {
  if (!(p > 0.0 && p <= 1.0) || !(prob_neq >= 0.0 && prob_neq <= 1.0))
    throw std::invalid_argument("eq12 inputs out of range");
  return 2.0 * (1.0 - p) * prob_neq;
}

CConstants c_constants(double a, double u) {
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("c_constants: a outside (0,1]");
  if (!(u > 0.0 && u <= 1.0))
    throw std::invalid_argument("c_constants: u outside (0,1]");
  CConstants out;
  if (a == 1.0) {
    out.c1 = out.c2 = 1.0;  // log(1-a) -> -inf kills the C1 term; log(1) = 0
    return out;
  }
  double log_q = std::log1p(-a);
  out.c1 = std::min(1.0, a * (1.0 + std::sqrt(-2.0 / (u * log_q))));
  out.c2 = std::min(1.0, a * (1.0 - 6.0 * std::log(a) / (std::numbers::pi * u)));
  return out;
}

GsumBounds gsum_bounds(double a, double u, double mu, double mu2,
                       bool positive) {
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("gsum_bounds: a outside (0,1]");
  if (!(mu > 0.0)) throw std::invalid_argument("gsum_bounds: mu <= 0");
  if (mu2 < mu * mu - 1e-9)
    throw std::invalid_argument("gsum_bounds: mu2 < mu^2");
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("gsum_bounds: u outside [0,1]");
  CConstants c =
      u > 0.0 ? c_constants(a, u) : CConstants{1.0, 1.0};  // u -> 0 limit
  GsumBounds out;
  if (positive) {
    if (mu < 1.0)
      throw std::invalid_argument("gsum_bounds: positive summands need mu >= 1");
    double factor = mu2 / 2.0 + 0.5 + mu;
    out.rhs_tv = c.c1 * factor;
    out.rhs_local = c.c2 * factor;
    out.p = a / mu;
  } else {
    double factor = mu2 / (2.0 * mu) - 0.5;
    out.rhs_tv = c.c1 * factor;
    out.rhs_local = c.c2 * factor;
    out.p = a / (a + mu * (1.0 - a));
  }
  return out;
}

double geo_param_tv_bound(double p, double eps) {
  if (!(p > 0.0 && p <= 1.0) || !(eps >= 0.0) || !(p - eps > 0.0))
    throw std::invalid_argument("geo_param_tv_bound range violation");
  return eps / p;
}

namespace {

// E{|D| S_l(W | D)} for the independent joint of W ~ p and V ~ eq:
// group (w,v) cells by d = w - v, renormalize each group to the
// conditional law of W, and take its smoothness.
struct CondRhs {
  double order1 = 0.0;
  double order2 = 0.0;
  double mean_abs_d = 0.0;
};

CondRhs conditional_rhs(const Pmf& p, const Pmf& eq) {
  std::map<long long, std::map<long long, double>> by_d;  // d -> (w -> mass)
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pw = p.probs()[i];
    if (pw == 0.0) continue;
    long long w = p.offset() + static_cast<long long>(i);
    for (std::size_t j = 0; j < eq.size(); ++j) {
      double pv = eq.probs()[j];
      if (pv == 0.0) continue;
      long long v = eq.offset() + static_cast<long long>(j);
      by_d[w - v][w] += pw * pv;
    }
  }
  CondRhs out;
  for (auto& [d, cond] : by_d) {
    if (d == 0) continue;
    double pd = 0.0;
    long long lo = cond.begin()->first;
    long long hi = cond.rbegin()->first;
    std::vector<double> law(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (auto& [w, m] : cond) {
      pd += m;
      law[static_cast<std::size_t>(w - lo)] = m;
    }
    for (double& x : law) x /= pd;
    SmoothnessValue s = smoothness(Pmf::from_window(law, lo, 0.0));
    double weight = pd * std::abs(static_cast<double>(d));
    out.order1 += weight * s.s1;
    out.order2 += weight * s.s2;
    out.mean_abs_d += weight;
  }
  return out;
}

ValiditySweepRow fill_row(const Pmf& p, const Pmf& eq, const Pmf& target) {
  ValiditySweepRow row;
  CondRhs cond = conditional_rhs(p, eq);
  row.mean_abs_d = cond.mean_abs_d;
  row.rhs_cond_1 = cond.order1;
  row.rhs_cond_2 = cond.order2;
  SmoothnessValue s = smoothness(p);
  row.s1 = s.s1;
  row.s2 = s.s2;
  row.dist_w = distances(p, target);
  row.dist_eq = distances(eq, target);
  return row;
}

}  // namespace

ValiditySweepRow validity_row_positive(const Pmf& p, double ge_eps) {
  if (p.min_support() < 1)
    throw std::invalid_argument("validity_row_positive needs positive support");
  if (p.tail_mass() != 0.0)
    throw std::invalid_argument("validity sweep expects exact finite laws");
  double mean = moment(p, 1);
  double target_p = 1.0 / mean;
  Pmf eq = equilibrium_pos(p);
  ValiditySweepRow row = fill_row(p, eq, Pmf::geometric(target_p, 1, ge_eps));
  row.p = target_p;
  return row;
}

ValiditySweepRow validity_row_nonneg(const Pmf& p, double ge_eps) {
  if (p.min_support() != 0)
    throw std::invalid_argument("validity_row_nonneg needs P(0) > 0");
  if (p.tail_mass() != 0.0)
    throw std::invalid_argument("validity sweep expects exact finite laws");
  double mean = moment(p, 1);
  if (mean <= 0.0) throw std::invalid_argument("validity row needs mean > 0");
  double target_p = 1.0 / (1.0 + mean);
  Pmf eq = equilibrium_nonneg(p);
  ValiditySweepRow row = fill_row(p, eq, Pmf::geometric(target_p, 0, ge_eps));
  row.p = target_p;
  return row;
}

}  // namespace geomtv
