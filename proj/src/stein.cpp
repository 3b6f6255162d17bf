#include "geomtv/stein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geomtv {

long long stein_default_window(const std::vector<long long>& target_set,
                               double p, double trunc_eps) {
  long long top = 1;
  for (long long b : target_set) top = std::max(top, b);
  if (p >= 1.0) return top + 1;
  double q = 1.0 - p;
  top += static_cast<long long>(
      std::ceil(std::log(1.0 / trunc_eps) / -std::log(q)));
  return top;
}

SteinSolution stein_solve(const std::vector<long long>& target_set, double p,
                          long long window_top) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("stein parameter outside (0,1]");
  if (window_top < 1) throw std::invalid_argument("empty stein window");
  SteinSolution sol;
  sol.target_set = target_set;
  std::sort(sol.target_set.begin(), sol.target_set.end());
  sol.target_set.erase(
      std::unique(sol.target_set.begin(), sol.target_set.end()),
      sol.target_set.end());
  if (!sol.target_set.empty()) {
    if (sol.target_set.front() < 1)
      throw std::invalid_argument("stein target set must be within {1,2,...}");
    if (sol.target_set.back() > window_top)
      throw std::invalid_argument("stein window must cover max(B)");
  }
  sol.p = p;
  double q = 1.0 - p;

  double sum_b = 0.0;  // sum_{i in B} q^{i-1}
  for (long long b : sol.target_set)
    sum_b += std::pow(q, static_cast<double>(b - 1));
  sol.ge_mass_b = p * sum_b;

  sol.values.assign(static_cast<std::size_t>(window_top) + 1, 0.0);
  for (long long k = 0; k <= window_top; ++k) {
    double above = 0.0;  // sum_{i in B, i >= k+1} q^{i-k-1}
    for (long long b : sol.target_set)
      if (b >= k + 1) above += std::pow(q, static_cast<double>(b - k - 1));
    sol.values[static_cast<std::size_t>(k)] = sum_b - above;
  }
  return sol;
}

SteinGradientBounds stein_gradient_bounds(const SteinSolution& sol) {
  SteinGradientBounds out;
  out.singleton = sol.target_set.size() == 1;
  for (std::size_t k = 0; k < sol.values.size(); ++k) {
    out.f_sup = std::max(out.f_sup, std::abs(sol.values[k]));
    if (k >= 1)
      out.grad_sup =
          std::max(out.grad_sup, std::abs(sol.values[k] - sol.values[k - 1]));
  }
  if (out.grad_sup > 1.0 + 1e-12)
    throw std::logic_error("stein gradient bound violated");
  if (out.singleton && out.f_sup > 1.0 + 1e-12)
    throw std::logic_error("stein singleton sup bound violated");
  return out;
}

double stein_max_residual(const SteinSolution& sol) {
  double q = 1.0 - sol.p;
  double worst = 0.0;
  std::size_t bi = 0;
  for (long long k = 1; k <= sol.window_top(); ++k) {
    while (bi < sol.target_set.size() && sol.target_set[bi] < k) ++bi;
    bool in_b = bi < sol.target_set.size() && sol.target_set[bi] == k;
    double lhs = q * sol.values[static_cast<std::size_t>(k)] -
                 sol.values[static_cast<std::size_t>(k - 1)];
    double rhs = (in_b ? 1.0 : 0.0) - sol.ge_mass_b;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double stein_max_shifted_residual(const SteinSolution& sol) {
  // q f(k+1) - f(k) = 1_{k in B-1} - Ge0(p){B-1}; Ge0(p){B-1} = Ge(p){B}.
  double q = 1.0 - sol.p;
  double worst = 0.0;
  std::size_t bi = 0;
  for (long long k = 0; k + 1 <= sol.window_top(); ++k) {
    while (bi < sol.target_set.size() && sol.target_set[bi] - 1 < k) ++bi;
    bool in_b = bi < sol.target_set.size() && sol.target_set[bi] - 1 == k;
    double lhs = q * sol.values[static_cast<std::size_t>(k + 1)] -
                 sol.values[static_cast<std::size_t>(k)];
    double rhs = (in_b ? 1.0 : 0.0) - sol.ge_mass_b;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace geomtv
