#include "geomtv/pmf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace geomtv {

namespace {

void check_finite_nonneg(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("pmf entry not finite");
    if (x < 0.0) throw std::invalid_argument("pmf entry negative");
  }
}

double stable_sum(const std::vector<double>& v) {
  // Neumaier compensated summation; distance asserts sit right at
  // theorem equality cases, so the extra digits are not optional.
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

Pmf Pmf::normalized(std::vector<double> raw, long long offset) {
  check_finite_nonneg(raw);
  std::size_t lo = 0;
  while (lo < raw.size() && raw[lo] == 0.0) ++lo;
  if (lo == raw.size()) throw std::invalid_argument("all-zero pmf input");
  std::size_t hi = raw.size();
  while (raw[hi - 1] == 0.0) --hi;
  std::vector<double> window(raw.begin() + static_cast<long>(lo),
                             raw.begin() + static_cast<long>(hi));
  double total = stable_sum(window);
  for (double& x : window) x /= total;
  return Pmf(offset + static_cast<long long>(lo), std::move(window), 0.0);
}

Pmf Pmf::from_window(std::vector<double> probs, long long offset,
                     double tail_mass) {
  check_finite_nonneg(probs);
  if (tail_mass < 0.0 || !std::isfinite(tail_mass))
    throw std::invalid_argument("invalid tail mass");
  std::size_t lo = 0;
  while (lo < probs.size() && probs[lo] == 0.0) ++lo;
  if (lo == probs.size()) throw std::invalid_argument("all-zero pmf window");
  std::size_t hi = probs.size();
  while (probs[hi - 1] == 0.0) --hi;
  std::vector<double> window(probs.begin() + static_cast<long>(lo),
                             probs.begin() + static_cast<long>(hi));
  double total = stable_sum(window) + tail_mass;
  if (std::abs(total - 1.0) > kMassTol)
    throw std::invalid_argument("pmf mass not 1: off by " +
                                std::to_string(total - 1.0));
  return Pmf(offset + static_cast<long long>(lo), std::move(window),
             tail_mass);
}

Pmf Pmf::point_mass(long long k) { return Pmf(k, {1.0}, 0.0); }

Pmf Pmf::bernoulli(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("bernoulli parameter outside [0,1]");
  if (mu == 0.0) return point_mass(0);
  if (mu == 1.0) return point_mass(1);
  return Pmf(0, {1.0 - mu, mu}, 0.0);
}

Pmf Pmf::uniform_range(long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("empty uniform range");
  std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  return Pmf(lo, std::vector<double>(n, 1.0 / static_cast<double>(n)), 0.0);
}

Pmf Pmf::geometric(double p, int start, double trunc_eps) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("geometric parameter outside (0,1]");
  if (start != 0 && start != 1)
    throw std::invalid_argument("geometric start must be 0 or 1");
  if (p == 1.0) return point_mass(start);
  double q = 1.0 - p;
  // Stop once the tail is below trunc_eps*q, i.e. one point past the naive
  // rule. The equilibrium transform folds its unknown super-window survival
  // into the window; the extra point keeps that fold within trunc_eps even
  // for large p.
  std::vector<double> probs;
  double tail = 1.0;  // remaining mass  q^{len}
  while (tail > trunc_eps * q) {
    probs.push_back(tail * p);
    tail *= q;
    if (probs.size() > kHardSupportCap)
      throw std::length_error("geometric window exceeds hard support cap");
  }
  return Pmf(start, std::move(probs), tail);
}

Pmf Pmf::yule_simon(long long kmax) {
  if (kmax < 1) throw std::invalid_argument("yule_simon needs kmax >= 1");
  if (static_cast<std::size_t>(kmax) > kHardSupportCap)
    throw std::length_error("yule_simon window exceeds hard support cap");
  std::vector<double> probs(static_cast<std::size_t>(kmax));
  for (long long k = 1; k <= kmax; ++k) {
    double kd = static_cast<double>(k);
    probs[static_cast<std::size_t>(k - 1)] =
        4.0 / (kd * (kd + 1.0) * (kd + 2.0));
  }
  // 4/(k(k+1)(k+2)) telescopes as 2[1/(k(k+1)) - 1/((k+1)(k+2))].
  double tail = 2.0 / (static_cast<double>(kmax + 1) *
                       static_cast<double>(kmax + 2));
  return Pmf(1, std::move(probs), tail);
}

double Pmf::window_sum() const { return stable_sum(probs_); }

double Pmf::survival(long long k) const {
  if (k <= offset_) return 1.0;
  long long idx = k - offset_;
  if (idx >= static_cast<long long>(probs_.size())) return tail_mass_;
  double s = tail_mass_;
  for (std::size_t j = probs_.size(); j > static_cast<std::size_t>(idx); --j)
    s += probs_[j - 1];
  return s;
}

Pmf shift(const Pmf& p, long long delta) {
  return Pmf::from_window(p.probs(), p.offset() + delta, p.tail_mass());
}

Pmf convolve(const Pmf& p, const Pmf& q) {
  std::size_t n = p.size() + q.size() - 1;
  if (n > kHardSupportCap)
    throw std::length_error("convolution support exceeds hard cap");
  std::vector<double> out(n, 0.0);
  const auto& a = p.probs();
  const auto& b = q.probs();
  if (a.size() >= b.size()) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      double bj = b[j];
      if (bj == 0.0) continue;
      for (std::size_t i = 0; i < a.size(); ++i) out[i + j] += a[i] * bj;
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      double ai = a[i];
      if (ai == 0.0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
    }
  }
  double tp = p.tail_mass(), tq = q.tail_mass();
  double tail = tp + tq - tp * tq;
  if (tail > 0.0) {
    // Renormalize the represented part to account for fp drift, keeping
    // window + tail at exactly the represented product mass.
    double target = (1.0 - tp) * (1.0 - tq);
    double got = 0.0;
    for (double x : out) got += x;
    if (got > 0.0) {
      double scale = target / got;
      if (std::abs(scale - 1.0) < 1e-9)
        for (double& x : out) x *= scale;
    }
  }
  return Pmf::from_window(std::move(out), p.offset() + q.offset(), tail);
}

Pmf mixture(std::span<const double> weights, std::span<const Pmf> components) {
  if (weights.size() != components.size())
    throw std::invalid_argument("mixture weight/component length mismatch");
  if (weights.empty()) throw std::invalid_argument("empty mixture");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative mixture weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kMassTol)
    throw std::invalid_argument("mixture weights do not sum to 1");
  long long lo = std::numeric_limits<long long>::max();
  long long hi = std::numeric_limits<long long>::min();
  for (const Pmf& c : components) {
    lo = std::min(lo, c.min_support());
    hi = std::max(hi, c.max_support());
  }
  if (static_cast<unsigned long long>(hi - lo) + 1 > kHardSupportCap)
    throw std::length_error("mixture support exceeds hard cap");
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  double tail = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    double w = weights[c];
    if (w == 0.0) continue;
    const Pmf& comp = components[c];
    std::size_t base = static_cast<std::size_t>(comp.min_support() - lo);
    const auto& probs = comp.probs();
    for (std::size_t j = 0; j < probs.size(); ++j)
      out[base + j] += w * probs[j];
    tail += w * comp.tail_mass();
  }
  return Pmf::from_window(std::move(out), lo, tail);
}

Pmf condition_positive(const Pmf& p) {
  double pos = p.survival(1);
  if (pos <= 0.0) throw std::invalid_argument("no mass above 0");
  if (p.min_support() >= 1)
    return p;  // already positive
  std::vector<double> out;
  long long start = std::max<long long>(p.min_support(), 1);
  for (long long k = start; k <= p.max_support(); ++k)
    out.push_back(p.at(k) / pos);
  return Pmf::from_window(std::move(out), start, p.tail_mass() / pos);
}

double moment_tail_floor(const Pmf& p, int r) {
  double k = static_cast<double>(std::llabs(p.max_support())) + 1.0;
  return p.tail_mass() * std::pow(k, r);
}

double moment(const Pmf& p, int r) {
  if (r < 1 || r > 3) throw std::invalid_argument("moment order must be 1..3");
  if (moment_tail_floor(p, r) > kMomentTailTol)
    throw std::domain_error("tail contribution to moment not negligible");
  double sum = 0.0, comp = 0.0;
  const auto& probs = p.probs();
  for (std::size_t j = 0; j < probs.size(); ++j) {
    double k = static_cast<double>(p.offset() + static_cast<long long>(j));
    double term = probs[j];
    for (int t = 0; t < r; ++t) term *= k;
    double s = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - s) + term;
    else
      comp += (term - s) + sum;
    sum = s;
  }
  return sum + comp;
}

DistanceTriple distances(const Pmf& p, const Pmf& q) {
  long long lo = std::min(p.min_support(), q.min_support());
  long long hi = std::max(p.max_support(), q.max_support());
  double l1 = 0.0, l1c = 0.0;
  double cdf = 0.0, cdfc = 0.0;
  double ks = 0.0, loc = 0.0;
  for (long long k = lo; k <= hi; ++k) {
    double d = p.at(k) - q.at(k);
    double ad = std::abs(d);
    double t = l1 + ad;
    l1c += (std::abs(l1) >= ad) ? (l1 - t) + ad : (ad - t) + l1;
    l1 = t;
    double u = cdf + d;
    cdfc += (std::abs(cdf) >= std::abs(d)) ? (cdf - u) + d : (d - u) + cdf;
    cdf = u;
    ks = std::max(ks, std::abs(cdf + cdfc));
    loc = std::max(loc, ad);
  }
  DistanceTriple out;
  out.tv = 0.5 * (l1 + l1c);
  out.kolmogorov = ks;
  out.local = loc;
  out.truncation_slack = 0.5 * (p.tail_mass() + q.tail_mass());
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string pmf_to_json(const Pmf& p) {
  nlohmann::json j;
  j["offset"] = p.offset();
  j["probs"] = p.probs();
  j["tail_mass"] = p.tail_mass();
  return j.dump();
}

Pmf pmf_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return Pmf::from_window(j.at("probs").get<std::vector<double>>(),
                          j.at("offset").get<long long>(),
                          j.value("tail_mass", 0.0));
}

void pmf_write_csv(const Pmf& p, std::ostream& os) {
  os << "k,p\r\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    long long k = p.offset() + static_cast<long long>(j);
    os << k << "," << format_double(p.probs()[j]) << "\r\n";
  }
}

Pmf pmf_read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty pmf csv");
  std::vector<std::pair<long long, double>> rows;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("malformed pmf csv row: " + line);
    rows.emplace_back(std::stoll(line.substr(0, comma)),
                      std::stod(line.substr(comma + 1)));
  }
  if (rows.empty()) throw std::invalid_argument("pmf csv has no rows");
  std::sort(rows.begin(), rows.end());
  long long lo = rows.front().first, hi = rows.back().first;
  if (static_cast<unsigned long long>(hi - lo) + 1 > kHardSupportCap)
    throw std::length_error("pmf csv support exceeds hard cap");
  std::vector<double> probs(static_cast<std::size_t>(hi - lo + 1), 0.0);
  double total = 0.0;
  for (auto& [k, v] : rows) {
    probs[static_cast<std::size_t>(k - lo)] = v;
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("pmf csv mass differs from 1 beyond 1e-9");
  return Pmf::normalized(std::move(probs), lo);
}

}  // namespace geomtv
