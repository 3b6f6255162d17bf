#include <doctest.h>

#include <cmath>

#include "geomtv/bounds.hpp"
#include "geomtv/models/geometric_sum.hpp"
#include "geomtv/pmf.hpp"
#include "geomtv/rng.hpp"
#include "geomtv/transforms.hpp"

using namespace geomtv;

TEST_CASE("gsum exact: identity and closed-form families") {
  // sum of N ones is Ge(a)
  for (double a : {0.2, 0.6, 1.0}) {
    Pmf w = gsum_exact(Pmf::point_mass(1), a, 1);
    CHECK(distances(w, Pmf::geometric(a, 1)).tv_upper() <= 1e-11);
  }

  // Bernoulli summands over Ge0(a) counts stay geometric
  for (double a : {0.1, 0.5, 0.9}) {
    for (double mu : {0.1, 0.5, 0.9}) {
      Pmf w = gsum_exact(Pmf::bernoulli(mu), a, 0);
      double p = a / (a + mu * (1.0 - a));
      CHECK(distances(w, Pmf::geometric(p, 0)).tv_upper() <= 1e-10);
    }
  }

  // geometric summands: Ge(p') over Ge(a) counts is Ge(a p')
  double a = 0.35, pp = 0.6;
  Pmf w = gsum_exact(Pmf::geometric(pp, 1), a, 1);
  CHECK(distances(w, Pmf::geometric(a * pp, 1)).tv_upper() <= 1e-10);

  // against a direct truncated mixture-of-convolutions oracle
  Pmf x = Pmf::geometric(pp, 1);
  std::vector<double> weights;
  std::vector<Pmf> comps;
  Pmf power = x;
  double rem = 1.0;
  for (int n = 1; n <= 220; ++n) {
    double wn = a * std::pow(1.0 - a, n - 1);
    weights.push_back(wn);
    rem -= wn;
    comps.push_back(power);
    if (n < 220) power = convolve(power, x);
  }
  weights.push_back(std::max(rem, 0.0));
  comps.push_back(Pmf::point_mass(comps.back().max_support() + 1));
  Pmf oracle = mixture(weights, comps);
  CHECK(distances(w, oracle).tv_upper() <= 1e-10);

  CHECK_THROWS_AS(gsum_exact(Pmf::bernoulli(0.5), 0.5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gsum_exact(Pmf::point_mass(1), 0.0, 1),
                  std::invalid_argument);
}

TEST_CASE("gsum coupling sampler: geometric summands couple exactly") {
  GsumCouplingSampler sampler({Pmf::geometric(0.5, 1)}, 0.3);
  auto samples = sample_many(
      [&sampler](SeededRng& rng) { return sampler(rng); }, 20000,
      SeededRng(17), 8);
  // equilibrium fixed point: d = 0 up to the truncated-tail clamp
  std::size_t nonzero = 0;
  for (const auto& s : samples) {
    CHECK(s.d == s.w - s.w_eq);
    if (s.d != 0) ++nonzero;
  }
  CHECK(nonzero == 0);
  CHECK(thm1_rhs(samples, 1).value == doctest::Approx(0.0));
}

TEST_CASE("gsum coupling sampler: constant summands") {
  long long mu = 4;
  GsumCouplingSampler sampler({Pmf::point_mass(mu)}, 0.4);
  auto samples = sample_many(
      [&sampler](SeededRng& rng) { return sampler(rng); }, 20000,
      SeededRng(18), 8);
  for (const auto& s : samples) {
    CHECK(std::abs(s.d) <= mu - 1);  // X^e uniform on {1..mu}
    CHECK(s.s1 >= 0.0);
    CHECK(s.s1 <= 1.0);
  }
}

TEST_CASE("gsum sampler rejects mean mismatch") {
  std::vector<Pmf> laws{Pmf::point_mass(2), Pmf::point_mass(3)};
  CHECK_THROWS_AS(GsumCouplingSampler(std::move(laws), 0.5),
                  std::invalid_argument);
}

TEST_CASE("gsum bound dominance for iid families") {
  std::vector<Pmf> family{Pmf::uniform_range(1, 3), Pmf::geometric(0.5, 1),
                          Pmf::point_mass(2)};
  for (const Pmf& x : family) {
    double mu = moment(x, 1), mu2 = moment(x, 2);
    double u = shift_overlap_u(x);
    for (double a : {0.1, 0.3, 0.5, 0.9}) {
      GsumBounds gb = gsum_bounds(a, u, mu, mu2, true);
      Pmf w = gsum_exact(x, a, 1);
      DistanceTriple d = distances(w, Pmf::geometric(gb.p, 1, 1e-14));
      CHECK(d.tv_upper() <= gb.rhs_tv + 1e-9);
      CHECK(d.local + 2 * d.truncation_slack <= gb.rhs_local + 1e-9);
    }
  }
}

TEST_CASE("non-iid mix: monte carlo rhs dominates the exact tv") {
  // uniform{1,3} and the point mass at 2 share mean 2
  std::vector<double> half{0.5, 0.5};
  std::vector<Pmf> pts{Pmf::point_mass(1), Pmf::point_mass(3)};
  Pmf u13 = mixture(half, pts);
  GsumCouplingSampler sampler({u13, Pmf::point_mass(2)}, 0.3);
  auto samples = sample_many(
      [&sampler](SeededRng& rng) { return sampler(rng); }, 100000,
      SeededRng(20240811), 16);
  McEstimate rhs = thm1_rhs(samples, 1);

  // exact law of the alternating sum via a manual mixture over N
  double a = 0.3;
  std::vector<double> weights;
  std::vector<Pmf> comps;
  Pmf partial = Pmf::point_mass(0);
  double rem = 1.0;
  for (int n = 1; n <= 200; ++n) {
    partial = convolve(partial, n % 2 == 1 ? u13 : Pmf::point_mass(2));
    double wn = a * std::pow(1.0 - a, n - 1);
    weights.push_back(wn);
    comps.push_back(partial);
    rem -= wn;
  }
  weights.push_back(std::max(rem, 0.0));
  comps.push_back(Pmf::point_mass(comps.back().max_support() + 1));
  Pmf w = mixture(weights, comps);
  double p = a / 2.0;
  double lhs = distances(w, Pmf::geometric(p, 1, 1e-14)).tv_upper();
  CHECK(lhs <= rhs.value + 3.0 * rhs.std_error);
  CHECK(rhs.value < 2.0);  // finite and nontrivial
}
