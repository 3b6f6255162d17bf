#include <doctest.h>

#include <cmath>
#include <sstream>

#include "geomtv/pmf.hpp"
#include "geomtv/rng.hpp"

using namespace geomtv;

namespace {

Pmf random_pmf(SeededRng& rng, long long lo_min = -3, long long lo_max = 5,
               int max_width = 10) {
  long long width = rng.uniform_int(1, max_width);
  long long lo = rng.uniform_int(lo_min, lo_max);
  std::vector<double> raw(static_cast<std::size_t>(width));
  for (double& x : raw) x = rng.next_real01();
  raw.front() += 0.01;
  raw.back() += 0.01;
  return Pmf::normalized(std::move(raw), lo);
}

}  // namespace

TEST_CASE("normalize scales, trims and validates") {
  Pmf p = Pmf::normalized({0.0, 2.0, 2.0}, 0);
  CHECK(p.min_support() == 1);
  CHECK(p.at(1) == doctest::Approx(0.5));
  CHECK(p.at(2) == doctest::Approx(0.5));

  Pmf point = Pmf::normalized({1.0}, 7);
  CHECK(point.is_point_mass());
  CHECK(point.at(7) == 1.0);

  Pmf s = Pmf::normalized({1.0, 1.0, 2.0}, -1);
  CHECK(s.at(-1) == doctest::Approx(0.25));
  CHECK(s.at(0) == doctest::Approx(0.25));
  CHECK(s.at(1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(Pmf::normalized({0.0, 0.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(Pmf::normalized({0.5, -0.1}, 0), std::invalid_argument);
}

TEST_CASE("geometric families") {
  CHECK(Pmf::geometric(1.0, 1).is_point_mass());
  CHECK(Pmf::geometric(1.0, 1).at(1) == 1.0);
  CHECK(Pmf::geometric(1.0, 0).at(0) == 1.0);

  Pmf g = Pmf::geometric(0.5, 1);
  CHECK(g.at(1) == doctest::Approx(0.5));
  CHECK(g.at(2) == doctest::Approx(0.25));
  CHECK(g.at(3) == doctest::Approx(0.125));

  Pmf g0 = Pmf::geometric(0.5, 0);
  CHECK(g0.at(0) == doctest::Approx(0.5));
  CHECK(g0.at(1) == doctest::Approx(0.25));

  CHECK(g.window_sum() + g.tail_mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.tail_mass() <= kDefaultTruncEps);

  CHECK_THROWS_AS(Pmf::geometric(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Pmf::geometric(1.5, 1), std::invalid_argument);
}

TEST_CASE("yule-simon pmf and telescoping tail") {
  Pmf y = Pmf::yule_simon(200);
  CHECK(y.at(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(y.at(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  // independent tail oracle: direct summation of 4/(k(k+1)(k+2)) above the
  // window until terms vanish
  double tail = 0.0;
  for (long long k = 201; k <= 4'000'000; ++k) {
    double kd = static_cast<double>(k);
    double term = 4.0 / (kd * (kd + 1.0) * (kd + 2.0));
    tail += term;
    if (term < 1e-18) break;
  }
  CHECK(y.tail_mass() == doctest::Approx(tail).epsilon(1e-6));
  CHECK(y.window_sum() + y.tail_mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(Pmf::yule_simon(0), std::invalid_argument);
}

TEST_CASE("convolution identities and oracle") {
  SeededRng rng(101);
  Pmf p = random_pmf(rng);
  Pmf conv = convolve(Pmf::point_mass(0), p);
  DistanceTriple d = distances(conv, p);
  CHECK(d.tv <= 1e-15);

  Pmf b2 = convolve(Pmf::bernoulli(0.5), Pmf::bernoulli(0.5));
  CHECK(b2.at(0) == doctest::Approx(0.25));
  CHECK(b2.at(1) == doctest::Approx(0.5));
  CHECK(b2.at(2) == doctest::Approx(0.25));

  // Ge(a)*Ge(a) against the direct double-sum oracle
  double a = 0.35;
  Pmf g = Pmf::geometric(a, 1);
  Pmf gg = convolve(g, g);
  for (long long k = 2; k <= 40; ++k) {
    double oracle = 0.0;
    for (long long j = 1; j < k; ++j)
      oracle += std::pow(1 - a, j - 1) * a * std::pow(1 - a, k - j - 1) * a;
    CHECK(gg.at(k) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("convolve commutative and associative on exact inputs") {
  SeededRng rng(4242);
  for (int t = 0; t < 20; ++t) {
    Pmf a = random_pmf(rng), b = random_pmf(rng), c = random_pmf(rng);
    CHECK(distances(convolve(a, b), convolve(b, a)).tv <= 1e-12);
    CHECK(distances(convolve(convolve(a, b), c), convolve(a, convolve(b, c)))
              .tv <= 1e-12);
  }
}

TEST_CASE("mixture basics") {
  Pmf p = Pmf::geometric(0.3, 1);
  std::vector<double> w1{1.0};
  std::vector<Pmf> c1{p};
  CHECK(distances(mixture(w1, c1), p).tv <= 1e-15);

  std::vector<double> w2{0.5, 0.5};
  std::vector<Pmf> c2{Pmf::point_mass(0), Pmf::point_mass(1)};
  Pmf bern = mixture(w2, c2);
  CHECK(distances(bern, Pmf::bernoulli(0.5)).tv <= 1e-15);

  std::vector<double> w3(5, 0.2);
  std::vector<Pmf> c3;
  for (long long m = 1; m <= 5; ++m) c3.push_back(Pmf::point_mass(m));
  CHECK(distances(mixture(w3, c3), Pmf::uniform_range(1, 5)).tv <= 1e-15);

  CHECK_THROWS_AS(mixture(w2, c1), std::invalid_argument);
  std::vector<double> bad{0.7, 0.7};
  CHECK_THROWS_AS(mixture(bad, c2), std::invalid_argument);
  std::vector<double> neg{1.5, -0.5};
  CHECK_THROWS_AS(mixture(neg, c2), std::invalid_argument);
}

TEST_CASE("mixture satisfies conditional tv bound") {
  // tv(mix P, mix Q) <= sum w_x tv(P_x, Q_x)
  SeededRng rng(777);
  for (int t = 0; t < 30; ++t) {
    std::size_t m = static_cast<std::size_t>(rng.uniform_int(2, 5));
    std::vector<double> w(m);
    double tot = 0.0;
    for (double& x : w) {
      x = rng.next_real01() + 0.05;
      tot += x;
    }
    for (double& x : w) x /= tot;
    std::vector<Pmf> ps, qs;
    double rhs = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      ps.push_back(random_pmf(rng));
      qs.push_back(random_pmf(rng));
      rhs += w[j] * distances(ps[j], qs[j]).tv;
    }
    double lhs = distances(mixture(w, ps), mixture(w, qs)).tv;
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("condition_positive") {
  Pmf pos = Pmf::uniform_range(1, 4);
  CHECK(distances(condition_positive(pos), pos).tv <= 1e-15);

  Pmf p = Pmf::normalized({0.5, 0.25, 0.25}, 0);
  Pmf cond = condition_positive(p);
  CHECK(cond.at(1) == doctest::Approx(0.5));
  CHECK(cond.at(2) == doctest::Approx(0.5));

  // Ge0(p) conditioned on positivity is Ge(p) shifted into positive support
  double prm = 0.37;
  Pmf g0 = Pmf::geometric(prm, 0);
  Pmf target = Pmf::geometric(prm, 1);
  CHECK(distances(condition_positive(g0), target).tv_upper() <= 1e-11);

  CHECK_THROWS_AS(condition_positive(Pmf::point_mass(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(condition_positive(Pmf::point_mass(-2)),
                  std::invalid_argument);
}

TEST_CASE("moments") {
  CHECK(moment(Pmf::point_mass(9), 1) == doctest::Approx(9.0));
  CHECK(moment(Pmf::point_mass(9), 2) == doctest::Approx(81.0));

  double p = 0.23;
  CHECK(moment(Pmf::geometric(p, 1), 1) ==
        doctest::Approx(1.0 / p).epsilon(1e-9));

  // summation oracle for the second moment of Ge0(0.5)
  double oracle = 0.0;
  for (long long k = 0; k < 400; ++k)
    oracle += static_cast<double>(k * k) * std::pow(0.5, k + 1);
  CHECK(moment(Pmf::geometric(0.5, 0), 2) ==
        doctest::Approx(oracle).epsilon(1e-9));  // windowed vs full series

  CHECK_THROWS_AS(moment(Pmf::geometric(0.5, 1), 0), std::invalid_argument);
}

TEST_CASE("moment of convolution adds") {
  SeededRng rng(31337);
  for (int t = 0; t < 25; ++t) {
    Pmf a = random_pmf(rng), b = random_pmf(rng);
    CHECK(moment(convolve(a, b), 1) ==
          doctest::Approx(moment(a, 1) + moment(b, 1)).epsilon(1e-10));
  }
}

TEST_CASE("distances: identities and the even/odd example") {
  Pmf g = Pmf::geometric(0.4, 1);
  DistanceTriple self = distances(g, g);
  CHECK(self.tv == 0.0);
  CHECK(self.kolmogorov == 0.0);
  CHECK(self.local == 0.0);

  // U_n uniform on evens in 1..2n vs V_n uniform on odds: tv = 1, dK = 1/n
  long long n = 8;
  std::vector<double> even(2 * n, 0.0), odd(2 * n, 0.0);
  for (long long k = 1; k <= 2 * n; ++k) {
    if (k % 2 == 0)
      even[static_cast<std::size_t>(k - 1)] = 1.0;
    else
      odd[static_cast<std::size_t>(k - 1)] = 1.0;
  }
  DistanceTriple d = distances(Pmf::normalized(even, 1),
                               Pmf::normalized(odd, 1));
  CHECK(d.tv == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.kolmogorov == doctest::Approx(1.0 / static_cast<double>(n))
                            .epsilon(1e-12));

  // direct half-L1 oracle
  Pmf p1 = Pmf::geometric(0.5, 0), p2 = Pmf::geometric(1.0 / 3.0, 0);
  double l1 = 0.0;
  for (long long k = 0; k <= p2.max_support() + 1; ++k)
    l1 += std::abs(p1.at(k) - p2.at(k));
  CHECK(distances(p1, p2).tv == doctest::Approx(0.5 * l1).epsilon(1e-12));
}

TEST_CASE("distance properties on random pairs") {
  SeededRng rng(999);
  for (int t = 0; t < 50; ++t) {
    Pmf a = random_pmf(rng), b = random_pmf(rng), c = random_pmf(rng);
    DistanceTriple ab = distances(a, b);
    CHECK(ab.kolmogorov <= ab.tv + 1e-13);
    CHECK(ab.tv <= 1.0 + 1e-13);
    CHECK(ab.local <= 1.0 + 1e-13);
    // metric properties
    CHECK(ab.tv == doctest::Approx(distances(b, a).tv).epsilon(1e-13));
    CHECK(ab.tv <= distances(a, c).tv + distances(c, b).tv + 1e-12);
  }
}

TEST_CASE("json and csv round trips") {
  Pmf g = Pmf::geometric(0.31, 0);
  Pmf back = pmf_from_json(pmf_to_json(g));
  CHECK(back.offset() == g.offset());
  CHECK(back.tail_mass() == doctest::Approx(g.tail_mass()));
  CHECK(distances(back, g).tv <= 1e-15);

  Pmf fin = Pmf::normalized({0.2, 0.0, 0.8}, -2);
  std::stringstream ss;
  pmf_write_csv(fin, ss);
  Pmf fin2 = pmf_read_csv(ss);
  CHECK(distances(fin, fin2).tv <= 1e-12);
  CHECK(fin2.min_support() == -2);
}

TEST_CASE("survival accounts for tail mass") {
  Pmf g = Pmf::geometric(0.5, 1);
  CHECK(g.survival(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.survival(3) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(g.survival(g.max_support() + 5) == g.tail_mass());
}
