#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "geomtv/pmf.hpp"

namespace geomtv {

// Deterministic, splittable random source. The engine is std::mt19937_64
// (bit-exact across platforms); all distributions are implemented here
// rather than taken from <random> because the standard leaves their
// algorithms unspecified and every experiment promises byte-identical
// output for a recorded seed.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed)
      : seed_(seed), eng_(scramble(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Child stream with a seed derived from (seed, stream); used to hand
  // independent generators to parallel shards.
  SeededRng split(std::uint64_t stream) const {
    return SeededRng(scramble(seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0,1) with 53 random bits.
  double next_real01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform on {0,...,n-1} by rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x > limit);
    return x % n;
  }

  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return next_real01() < p; }

  // Ge(a) on {1,2,...} for start=1, Ge^0(a) on {0,1,...} for start=0,
  // by inversion.
  long long geometric(double a, int start) {
    if (a >= 1.0) return start;
    double u = next_real01();
    double k = std::floor(std::log1p(-u) / std::log1p(-a));
    return start + static_cast<long long>(k);
  }

 private:
  static std::uint64_t scramble(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

// CDF-inversion sampler over a Pmf window. Draws landing in the truncated
// tail (probability tail_mass) are clamped to the top window point.
class PmfSampler {
 public:
  explicit PmfSampler(const Pmf& pmf) : offset_(pmf.offset()) {
    cdf_.reserve(pmf.size());
    double acc = 0.0;
    for (double x : pmf.probs()) {
      acc += x;
      cdf_.push_back(acc);
    }
  }

  long long draw(SeededRng& rng) const { return invert(rng.next_real01()); }

  // Quantile at u in [0,1); sharing one u across two samplers yields the
  // comonotone coupling of their laws.
  long long invert(double u) const {
    std::size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cdf_[mid] > u)
        hi = mid;
      else
        lo = mid + 1;
    }
    return offset_ + static_cast<long long>(lo);
  }

 private:
  long long offset_;
  std::vector<double> cdf_;
};

// Replication-parallel Monte Carlo driver. Shard s draws its replications
// from rng.split(s); results are concatenated in shard order, so the
// output depends only on (seed, reps, shards), never on scheduling.
template <class Fn>
auto sample_many(const Fn& fn, std::size_t reps, const SeededRng& base,
                 unsigned shards)
    -> std::vector<decltype(fn(std::declval<SeededRng&>()))> {
  using Sample = decltype(fn(std::declval<SeededRng&>()));
  if (shards == 0) shards = 1;
  if (shards > reps && reps > 0) shards = static_cast<unsigned>(reps);
  std::vector<std::size_t> counts(shards, reps / shards);
  for (std::size_t s = 0; s < reps % shards; ++s) ++counts[s];
  std::vector<std::size_t> starts(shards, 0);
  for (unsigned s = 1; s < shards; ++s)
    starts[s] = starts[s - 1] + counts[s - 1];
  std::vector<Sample> out(reps);
  auto worker = [&](unsigned s) {
    SeededRng rng = base.split(s);
    for (std::size_t r = 0; r < counts[s]; ++r) out[starts[s] + r] = fn(rng);
  };
  if (shards == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(shards);
    for (unsigned s = 0; s < shards; ++s) pool.emplace_back(worker, s);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace geomtv
