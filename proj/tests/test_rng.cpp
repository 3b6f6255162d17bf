#include <doctest.h>

#include <cmath>
#include <map>

#include "geomtv/pmf.hpp"
#include "geomtv/rng.hpp"

using namespace geomtv;

TEST_CASE("seeded rng is deterministic and split streams differ") {
  SeededRng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  SeededRng base(7);
  SeededRng s0 = base.split(0), s1 = base.split(1);
  SeededRng s0b = base.split(0);
  bool all_equal = true;
  for (int i = 0; i < 50; ++i) {
    std::uint64_t x = s0.next_u64();
    if (x != s0b.next_u64()) all_equal = false;
    if (x == s1.next_u64()) {
    }
  }
  CHECK(all_equal);
}

TEST_CASE("uniform_int stays in range and is roughly uniform") {
  SeededRng rng(99);
  std::map<long long, int> counts;
  for (int i = 0; i < 60000; ++i) {
    long long v = rng.uniform_int(-2, 3);
    CHECK(v >= -2);
    CHECK(v <= 3);
    ++counts[v];
  }
  for (auto& [k, c] : counts)
    CHECK(std::abs(c - 10000) < 500);  // ~5 sigma
}

TEST_CASE("geometric sampler matches the pmf") {
  SeededRng rng(2718);
  double a = 0.3;
  std::map<long long, double> freq;
  int reps = 200000;
  for (int i = 0; i < reps; ++i) freq[rng.geometric(a, 1)] += 1.0 / reps;
  Pmf g = Pmf::geometric(a, 1);
  double tv = 0.0;
  for (long long k = 1; k <= g.max_support(); ++k) {
    auto it = freq.find(k);
    double f = it == freq.end() ? 0.0 : it->second;
    tv += std::abs(f - g.at(k));
  }
  CHECK(tv / 2.0 <= 0.01);
  CHECK(SeededRng(1).geometric(1.0, 1) == 1);
  CHECK(SeededRng(1).geometric(1.0, 0) == 0);
}

TEST_CASE("pmf sampler inverts the cdf") {
  SeededRng rng(31415);
  Pmf p = Pmf::normalized({0.1, 0.0, 0.4, 0.5}, -1);
  PmfSampler sampler(p);
  std::map<long long, double> freq;
  int reps = 200000;
  for (int i = 0; i < reps; ++i) freq[sampler.draw(rng)] += 1.0 / reps;
  CHECK(freq.count(0) == 0);  // zero-probability point never drawn
  double tv = 0.0;
  for (long long k = -1; k <= 2; ++k) {
    auto it = freq.find(k);
    double f = it == freq.end() ? 0.0 : it->second;
    tv += std::abs(f - p.at(k));
  }
  CHECK(tv / 2.0 <= 0.01);
}

TEST_CASE("sample_many is deterministic and shard-stable") {
  auto draw = [](SeededRng& rng) {
    return static_cast<long long>(rng.next_u64() % 1000);
  };
  auto a = sample_many(draw, 1000, SeededRng(5), 8);
  auto b = sample_many(draw, 1000, SeededRng(5), 8);
  CHECK(a == b);
  auto c = sample_many(draw, 1000, SeededRng(6), 8);
  CHECK(a != c);
}
