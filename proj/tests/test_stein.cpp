#include <doctest.h>

#include <cmath>

#include "geomtv/rng.hpp"
#include "geomtv/stein.hpp"

using namespace geomtv;

TEST_CASE("stein solution closed forms") {
  SteinSolution empty = stein_solve({}, 0.4, 30);
  for (double v : empty.values) CHECK(v == 0.0);
  SteinGradientBounds gb = stein_gradient_bounds(empty);
  CHECK(gb.grad_sup == 0.0);
  CHECK(gb.f_sup == 0.0);

  SteinSolution one = stein_solve({1}, 0.5, 40);
  CHECK(one.values[0] == doctest::Approx(0.0));
  for (long long k = 1; k <= one.window_top(); ++k)
    CHECK(one.values[static_cast<std::size_t>(k)] == doctest::Approx(1.0));
  // residual at k=1: q f(1) - f(0) = 1/2 = 1 - Ge(1/2){1}
  CHECK(0.5 * one.values[1] - one.values[0] == doctest::Approx(0.5));
  SteinGradientBounds gb1 = stein_gradient_bounds(one);
  CHECK(gb1.singleton);
  CHECK(gb1.grad_sup == doctest::Approx(1.0));
  CHECK(gb1.f_sup == doctest::Approx(1.0));

  CHECK_THROWS_AS(stein_solve({1}, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(stein_solve({0}, 0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(stein_solve({5}, 0.5, 3), std::invalid_argument);
}

TEST_CASE("stein p=1 degenerate target") {
  SteinSolution sol = stein_solve({2, 3}, 1.0, 10);
  CHECK(stein_max_residual(sol) <= 1e-15);
}

TEST_CASE("stein residuals and bounds over random instances") {
  SeededRng rng(13);
  for (int t = 0; t < 500; ++t) {
    double p = 0.05 + 0.9 * rng.next_real01();
    std::vector<long long> b;
    for (long long k = 1; k <= 50; ++k)
      if (rng.next_real01() < 0.3) b.push_back(k);
    long long top = stein_default_window(b, p);
    SteinSolution sol = stein_solve(b, p, top);
    CHECK(stein_max_residual(sol) <= 1e-12);
    CHECK(stein_max_shifted_residual(sol) <= 1e-12);
    SteinGradientBounds gb = stein_gradient_bounds(sol);
    CHECK(gb.grad_sup <= 1.0 + 1e-12);
    if (b.size() == 1) CHECK(gb.f_sup <= 1.0 + 1e-12);
  }
}

TEST_CASE("stein interval target window scan") {
  std::vector<long long> b;
  for (long long k = 1; k <= 50; ++k) b.push_back(k);
  SteinSolution sol = stein_solve(b, 0.1, stein_default_window(b, 0.1));
  SteinGradientBounds gb = stein_gradient_bounds(sol);
  CHECK(gb.grad_sup <= 1.0 + 1e-12);
  CHECK(stein_max_residual(sol) <= 1e-12);
}
