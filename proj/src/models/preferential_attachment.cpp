#include "geomtv/models/preferential_attachment.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace geomtv {

Pmf pa_degree_dist(long long n, long long i) {
  if (i < 1 || i > n) throw std::invalid_argument("pa needs 1 <= i <= n");
  // support of W_{n,i} is [1, n - i + 2]
  std::size_t width = static_cast<std::size_t>(n - i + 2);
  std::vector<double> law(width, 0.0);  // index d holds P(degree = d + 1)
  law[0] = 1.0 - 1.0 / static_cast<double>(2 * i - 1);
  if (width > 1) law[1] = 1.0 / static_cast<double>(2 * i - 1);
  std::size_t max_idx = std::min<std::size_t>(1, width - 1);
  for (long long j = i + 1; j <= n; ++j) {
    double denom = static_cast<double>(2 * j - 1);
    std::size_t new_max = std::min(max_idx + 1, width - 1);
    for (std::size_t d = new_max; d >= 1; --d) {
      double deg = static_cast<double>(d + 1);
      law[d] = law[d] * (1.0 - deg / denom) +
               law[d - 1] * (static_cast<double>(d) / denom);
    }
    law[0] *= 1.0 - 1.0 / denom;
    max_idx = new_max;
  }
  return Pmf::from_window(std::move(law), 1, 0.0);
}

double pa_mean_degree(long long n, long long i) {
  if (i < 1 || i > n) throw std::invalid_argument("pa needs 1 <= i <= n");
  double mean = 1.0;
  for (long long j = i; j <= n; ++j)
    mean *= static_cast<double>(2 * j) / static_cast<double>(2 * j - 1);
  return mean;
}

Pmf pa_mixture_dist(long long n) {
  if (n < 1) throw std::invalid_argument("pa mixture needs n >= 1");
  std::size_t width = static_cast<std::size_t>(n) + 1;
  std::vector<double> mix(width, 0.0);
  double wn = 1.0 / static_cast<double>(n);
  for (long long i = 1; i <= n; ++i) {
    Pmf law = pa_degree_dist(n, i);
    for (std::size_t j = 0; j < law.size(); ++j)
      mix[static_cast<std::size_t>(law.offset() - 1) + j] += wn * law.probs()[j];
  }
  return Pmf::from_window(std::move(mix), 1, 0.0);
}

double yule_mixture_check(long long kmax, double quad_tol) {
  if (kmax < 1) throw std::invalid_argument("yule check needs kmax >= 1");
  using boost::math::quadrature::gauss_kronrod;
  double worst = 0.0;
  for (long long k = 1; k <= kmax; ++k) {
    auto integrand = [k](double u) {
      double r = std::sqrt(u);
      return std::pow(1.0 - r, static_cast<double>(k - 1)) * r;
    };
    double error = 0.0;
    double val = gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 15,
                                                      quad_tol, &error);
    // the sqrt singularity at 0 makes the interval estimate pessimistic;
    // observed true error is ~2e-12
    if (error > 1e-5)
      throw std::runtime_error("yule quadrature did not converge");
    double kd = static_cast<double>(k);
    double target = 4.0 / (kd * (kd + 1.0) * (kd + 2.0));
    worst = std::max(worst, std::abs(val - target));
  }
  return worst;
}

PaCouplingSampler::PaCouplingSampler(long long n, long long i) : n_(n), i_(i) {
  if (i < 1 || i > n) throw std::invalid_argument("pa needs 1 <= i <= n");
  // P(K=k) proportional to E X_{k,i} = E W_{k-1,i}/(2k-1), where
  // E W_{i-1,i} = 1; the k = i atom is the loop probability 1/(2i-1).
  k_cdf_.reserve(static_cast<std::size_t>(n - i + 1));
  double mean_prefix = 1.0;  // E W_{k-1,i}, starts at E W_{i-1,i} = 1
  double acc = 0.0;
  for (long long k = i; k <= n; ++k) {
    acc += mean_prefix / static_cast<double>(2 * k - 1);
    k_cdf_.push_back(acc);
    mean_prefix *= static_cast<double>(2 * k) / static_cast<double>(2 * k - 1);
  }
  // acc now equals E W_{n,i} - 1.
  for (double& c : k_cdf_) c /= acc;
}

PaCouplingDraw PaCouplingSampler::operator()(SeededRng& rng) const {
  double uk = rng.next_real01();
  std::size_t lo = 0, hi = k_cdf_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (k_cdf_[mid] > uk)
      hi = mid;
    else
      lo = mid + 1;
  }
  long long k = i_ + static_cast<long long>(lo);

  long long w = 1, wt = 1;  // W^k_{j,i} and W~_{j,i}, start value 1
  for (long long j = i_; j <= n_; ++j) {
    double u = rng.next_real01();
    double denom_tilde = static_cast<double>(2 * j - 1);
    bool xt = u < static_cast<double>(wt) / denom_tilde;
    bool xk;
    if (j == i_) {
      // birth step: loop probability 1/(2i-1), conditioned version 1/(2i)
      // (1/(2i) with vertex i' present; none when k = i, whose loop end
      // is rerouted to i').
      xt = u < 1.0 / denom_tilde;
      xk = (k == i_) ? false : (u < 1.0 / static_cast<double>(2 * j));
    } else if (j < k) {
      xk = u < static_cast<double>(w) / static_cast<double>(2 * j);
    } else if (j == k) {
      xk = false;
    } else {
      xk = u < static_cast<double>(w) / denom_tilde;
    }
    if (xt) ++wt;
    if (xk) ++w;
  }
  PaCouplingDraw out;
  out.w_tilde = wt;
  out.w_k = w;
  out.k = k;
  out.neq = w != wt;
  return out;
}

}  // namespace geomtv
