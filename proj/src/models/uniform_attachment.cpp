#include "geomtv/models/uniform_attachment.hpp"

#include <stdexcept>
#include <vector>

namespace geomtv {

Pmf ua_degree_dist(long long n) {
  if (n < 1) throw std::invalid_argument("ua needs n >= 1");
  std::size_t width = static_cast<std::size_t>(n) + 1;
  std::vector<double> partial(width, 0.0);  // law of X_1 + ... + X_m
  partial[0] = 1.0;
  std::vector<double> mix(width, 0.0);
  double wn = 1.0 / static_cast<double>(n);
  for (long long m = 1; m <= n; ++m) {
    double mu = 1.0 / static_cast<double>(n - m + 1);
    for (std::size_t k = static_cast<std::size_t>(m); k > 0; --k)
      partial[k] = partial[k] * (1.0 - mu) + partial[k - 1] * mu;
    partial[0] *= 1.0 - mu;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(m); ++k)
      mix[k] += wn * partial[k];
  }
  return Pmf::from_window(std::move(mix), 0, 0.0);
}

double ua_mean_oracle(long long n) {
  double total = 0.0;
  double inner = 0.0;
  for (long long m = 1; m <= n; ++m) {
    inner += 1.0 / static_cast<double>(n - m + 1);
    total += inner;
  }
  return total / static_cast<double>(n);
}

}  // namespace geomtv
