#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace geomtv {

// Library-wide numeric policy. All probability arithmetic is double
// precision over finite support windows; mass that a builder deliberately
// leaves unassigned (almost always geometric-type tails above the window)
// is tracked in Pmf::tail_mass and surfaces as truncation_slack in every
// distance computation.
inline constexpr double kDefaultTruncEps = 1e-12;
inline constexpr double kMassTol = 1e-12;
inline constexpr std::size_t kHardSupportCap = 1'000'000;
inline constexpr double kMomentTailTol = 1e-6;

/// Finite-support integer probability mass function with explicit offset
/// and accounted tail mass.
///
/// Invariants maintained by all factories and operations:
///   * every window entry is >= 0,
///   * window sum + tail_mass is 1 within kMassTol,
///   * the first and last window entries are > 0 (no dangling zero margins),
///     except that a point mass has a single positive entry.
class Pmf {
 public:
  Pmf() : offset_(0), probs_{1.0}, tail_mass_(0.0) {}

  // Scales non-negative weights to a probability vector, trimming zero
  // margins and adjusting the offset. tail_mass of the result is 0.
  static Pmf normalized(std::vector<double> raw, long long offset);

  // Trusted window + tail; validates invariants.
  static Pmf from_window(std::vector<double> probs, long long offset,
                         double tail_mass);

  static Pmf point_mass(long long k);
  static Pmf bernoulli(double mu);
  static Pmf uniform_range(long long lo, long long hi);

  // Ge(p) on {1,2,...} for start=1, Ge^0(p) on {0,1,...} for start=0.
  // The window is extended until the remaining tail drops below
  // trunc_eps * (1-p); the exact remainder is stored in tail_mass.
  static Pmf geometric(double p, int start,
                       double trunc_eps = kDefaultTruncEps);

  // P(k) = 4/(k(k+1)(k+2)) for 1 <= k <= kmax; the telescoping remainder
  // 2/((kmax+1)(kmax+2)) is stored in tail_mass.
  static Pmf yule_simon(long long kmax);

  long long offset() const { return offset_; }
  const std::vector<double>& probs() const { return probs_; }
  double tail_mass() const { return tail_mass_; }

  long long min_support() const { return offset_; }
  long long max_support() const {
    return offset_ + static_cast<long long>(probs_.size()) - 1;
  }
  std::size_t size() const { return probs_.size(); }

  // Probability at k; 0 outside the window.
  double at(long long k) const {
    long long idx = k - offset_;
    if (idx < 0 || idx >= static_cast<long long>(probs_.size())) return 0.0;
    return probs_[static_cast<std::size_t>(idx)];
  }

  double window_sum() const;

  // P(W >= k) including tail mass (the tail lies above the window).
  double survival(long long k) const;

  bool is_point_mass() const { return probs_.size() == 1; }

 private:
  Pmf(long long offset, std::vector<double> probs, double tail_mass)
      : offset_(offset), probs_(std::move(probs)), tail_mass_(tail_mass) {}

  long long offset_;
  std::vector<double> probs_;
  double tail_mass_;
};

struct DistanceTriple {
  double tv = 0.0;          // lower value; true tv is in [tv, tv + slack]
  double kolmogorov = 0.0;
  double local = 0.0;
  double truncation_slack = 0.0;

  double tv_upper() const { return tv + truncation_slack; }
};

Pmf shift(const Pmf& p, long long delta);

// Exact convolution; offsets add, tail masses combine as the exact
// unassigned mass 1 - (1-tP)(1-tQ). Throws if the result support would
// exceed kHardSupportCap.
Pmf convolve(const Pmf& p, const Pmf& q);

// Pointwise weighted sum. Weights must be non-negative and sum to 1
// within kMassTol.
Pmf mixture(std::span<const double> weights, std::span<const Pmf> components);

// Removes mass at k <= 0 and rescales by 1/P(W > 0).
Pmf condition_positive(const Pmf& p);

// Windowed moment sum_k k^r P(k), r in {1,2,3}. Throws when the minimal
// possible tail contribution tail_mass * (max_support+1)^r exceeds
// kMomentTailTol, i.e. when truncation could matter at the scales the
// library asserts.
double moment(const Pmf& p, int r);

// tail_mass * (|max_support|+1)^r: a floor on what the truncated tail
// could contribute to the r-th moment.
double moment_tail_floor(const Pmf& p, int r);

// tv via the half-L1 identity, Kolmogorov via the running CDF difference,
// local as the sup of pointwise differences, all over the union of the
// two windows. truncation_slack = (tail_p + tail_q)/2 bounds how much the
// unassigned mass can move any of the three metrics.
DistanceTriple distances(const Pmf& p, const Pmf& q);

// JSON object {"offset": int, "probs": [...], "tail_mass": float}.
std::string pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const std::string& text);

// Two-column CSV (k,p) with header. Import normalizes and requires the
// column sum to be 1 within 1e-9.
void pmf_write_csv(const Pmf& p, std::ostream& os);
Pmf pmf_read_csv(std::istream& is);

// Shortest round-trip decimal formatting; used everywhere output must be
// byte-stable.
std::string format_double(double x);

}  // namespace geomtv
