#include <doctest.h>

#include <cmath>

#include "geomtv/experiments.hpp"
#include "geomtv/models/uniform_attachment.hpp"
#include "geomtv/pmf.hpp"

using namespace geomtv;

TEST_CASE("ua small cases by enumeration") {
  Pmf w1 = ua_degree_dist(1);
  CHECK(w1.is_point_mass());
  CHECK(w1.at(1) == doctest::Approx(1.0));

  // n = 2: four equally weighted paths (N in {1,2}) x (X_1 in {0,1}), X_2 = 1
  Pmf w2 = ua_degree_dist(2);
  CHECK(w2.at(0) == doctest::Approx(0.25));
  CHECK(w2.at(1) == doctest::Approx(0.5));
  CHECK(w2.at(2) == doctest::Approx(0.25));

  CHECK_THROWS_AS(ua_degree_dist(0), std::invalid_argument);
}

TEST_CASE("ua mean matches the harmonic oracle") {
  for (long long n : {1, 2, 3, 7, 25, 100}) {
    Pmf w = ua_degree_dist(n);
    CHECK(moment(w, 1) == doctest::Approx(ua_mean_oracle(n)).epsilon(1e-11));
  }
}

TEST_CASE("ua theorem bound 1/n with the explicit constant") {
  Pmf target = Pmf::geometric(0.5, 0);
  // n = 1: tv(delta_1, Ge0(1/2)) = 3/4
  DistanceTriple d1 = distances(ua_degree_dist(1), target);
  CHECK(d1.tv == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d1.tv_upper() <= 1.0);

  for (long long n : {2, 5, 10, 50, 100}) {
    DistanceTriple d = distances(ua_degree_dist(n), target);
    CHECK(d.tv_upper() <= 1.0 / static_cast<double>(n) + 1e-12);
  }
}

TEST_CASE("ua experiment rows are hard passes") {
  std::vector<long long> grid{2, 5, 10, 50, 100};
  auto reports = ua_experiment(grid);
  CHECK(reports.size() == 2 * grid.size());
  for (const auto& r : reports) {
    CHECK(r.hard);
    CHECK(r.pass);
  }
}
