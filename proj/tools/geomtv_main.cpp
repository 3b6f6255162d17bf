#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geomtv/bounds.hpp"
#include "geomtv/experiments.hpp"
#include "geomtv/models/galton_watson.hpp"
#include "geomtv/models/geometric_sum.hpp"
#include "geomtv/models/preferential_attachment.hpp"
#include "geomtv/models/uniform_attachment.hpp"
#include "geomtv/pmf.hpp"
#include "geomtv/report.hpp"
#include "geomtv/rng.hpp"
#include "geomtv/stein.hpp"
#include "geomtv/transforms.hpp"

namespace {

using namespace geomtv;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::uint64_t seed = 20240809;
  double trunc_eps = kDefaultTruncEps;
  std::string out_dir = ".";
  std::string format = "csv";
  std::size_t reps = 100000;
  unsigned shards = 32;
};

void apply_env_overrides(CommonOpts& opts) {
  if (const char* dir = std::getenv("GEOMTV_OUT_DIR")) opts.out_dir = dir;
  if (const char* shards = std::getenv("GEOMTV_SHARDS"))
    opts.shards = static_cast<unsigned>(std::stoul(shards));
}

// Pmf specs: "@file.json", "@file.csv", "ge:0.4", "ge0:0.4", "delta:3",
// "bern:0.3", "uniform:1..5", "yule:100", or inline "0:0.25,1:0.75".
Pmf parse_pmf(const std::string& spec, double trunc_eps) {
  if (spec.empty()) throw std::invalid_argument("empty pmf spec");
  if (spec[0] == '@') {
    fs::path path(spec.substr(1));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pmf file: " + spec);
    if (path.extension() == ".csv") return pmf_read_csv(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return pmf_from_json(buffer.str());
  }
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (head == "ge") return Pmf::geometric(std::stod(rest), 1, trunc_eps);
    if (head == "ge0") return Pmf::geometric(std::stod(rest), 0, trunc_eps);
    if (head == "delta") return Pmf::point_mass(std::stoll(rest));
    if (head == "bern") return Pmf::bernoulli(std::stod(rest));
    if (head == "yule") return Pmf::yule_simon(std::stoll(rest));
    if (head == "uniform") {
      auto dots = rest.find("..");
      if (dots == std::string::npos)
        throw std::invalid_argument("uniform spec needs lo..hi");
      return Pmf::uniform_range(std::stoll(rest.substr(0, dots)),
                                std::stoll(rest.substr(dots + 2)));
    }
  }
  // inline "k:v,k:v"
  std::vector<std::pair<long long, double>> entries;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto c = item.find(':');
    if (c == std::string::npos)
      throw std::invalid_argument("malformed pmf entry: " + item);
    entries.emplace_back(std::stoll(item.substr(0, c)),
                         std::stod(item.substr(c + 1)));
  }
  if (entries.empty()) throw std::invalid_argument("empty pmf spec");
  long long lo = entries.front().first, hi = entries.front().first;
  for (auto& [k, _] : entries) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  std::vector<double> raw(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (auto& [k, v] : entries) raw[static_cast<std::size_t>(k - lo)] = v;
  return Pmf::normalized(std::move(raw), lo);
}

std::vector<long long> parse_grid(const std::string& csv) {
  std::vector<long long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

void write_manifest(const CommonOpts& opts, const std::string& experiment,
                    const nlohmann::json& params,
                    const std::vector<std::string>& outputs) {
  nlohmann::json manifest;
  manifest["tool"] = "geomtv";
  manifest["version"] = kVersion;
  manifest["experiment"] = experiment;
  manifest["seed"] = opts.seed;
  manifest["trunc_eps"] = opts.trunc_eps;
  manifest["shards"] = opts.shards;
  manifest["reps"] = opts.reps;
  manifest["params"] = params;
  manifest["outputs"] = outputs;
  fs::path path = fs::path(opts.out_dir) / (experiment + "_manifest.json");
  std::ofstream out(path);
  out << manifest.dump(2) << "\n";
}

// Writes results + manifest, prints the summary, returns the exit code.
int emit(const CommonOpts& opts, const std::string& experiment,
         const nlohmann::json& params,
         const std::vector<BoundReport>& reports) {
  fs::create_directories(opts.out_dir);
  std::vector<std::string> outputs;
  fs::path results;
  if (opts.format == "json") {
    results = fs::path(opts.out_dir) / (experiment + "_results.json");
    std::ofstream out(results);
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
      out << "  " << report_to_json(reports[i])
          << (i + 1 < reports.size() ? "," : "") << "\n";
    out << "]\n";
  } else {
    results = fs::path(opts.out_dir) / (experiment + "_results.csv");
    std::ofstream out(results, std::ios::binary);
    write_reports_csv(reports, out);
  }
  outputs.push_back(results.filename().string());
  write_manifest(opts, experiment, params, outputs);

  bool any_fail = false;
  for (const auto& r : reports) {
    std::cout << report_summary_line(r) << "\n";
    if (r.hard && !r.pass) any_fail = true;
  }
  std::cout << (any_fail ? "RESULT: FAIL" : "RESULT: OK") << " ("
            << reports.size() << " rows, " << results.string() << ")\n";
  return any_fail ? 1 : 0;
}

int run_stein_check(const CommonOpts& opts, std::size_t count,
                    long long bmax) {
  SeededRng rng(opts.seed);
  double worst_resid = 0.0, worst_shift = 0.0, worst_grad = 0.0;
  bool ok = true;
  for (std::size_t t = 0; t < count; ++t) {
    double p = 0.05 + 0.9 * rng.next_real01();
    std::vector<long long> b;
    for (long long k = 1; k <= bmax; ++k)
      if (rng.next_real01() < 0.3) b.push_back(k);
    SteinSolution sol =
        stein_solve(b, p, stein_default_window(b, p, opts.trunc_eps));
    worst_resid = std::max(worst_resid, stein_max_residual(sol));
    worst_shift = std::max(worst_shift, stein_max_shifted_residual(sol));
    SteinGradientBounds gb = stein_gradient_bounds(sol);
    worst_grad = std::max(worst_grad, gb.grad_sup);
    if (gb.grad_sup > 1.0 + 1e-12) ok = false;
  }
  BoundReport row;
  row.theorem_tag = "stein_residual";
  row.params = {{"count", static_cast<double>(count)},
                {"bmax", static_cast<double>(bmax)}};
  row.lhs_value = std::max(worst_resid, worst_shift);
  row.rhs_value = 1e-12;
  row.hard = true;
  row.pass = ok && worst_resid <= 1e-12 && worst_shift <= 1e-12;
  std::vector<BoundReport> out{row};
  BoundReport grad;
  grad.theorem_tag = "stein_gradient_sup";
  grad.params = row.params;
  grad.lhs_value = worst_grad;
  grad.rhs_value = 1.0;
  grad.hard = true;
  grad.pass = worst_grad <= 1.0 + 1e-12;
  out.push_back(grad);
  return emit(opts, "stein-check", {{"count", count}, {"bmax", bmax}}, out);
}

int run_dist(const CommonOpts& opts, const std::string& pspec,
             const std::string& qspec) {
  Pmf p = parse_pmf(pspec, opts.trunc_eps);
  Pmf q = parse_pmf(qspec, opts.trunc_eps);
  DistanceTriple d = distances(p, q);
  nlohmann::json j;
  j["tv"] = d.tv;
  j["tv_upper"] = d.tv_upper();
  j["kolmogorov"] = d.kolmogorov;
  j["local"] = d.local;
  j["truncation_slack"] = d.truncation_slack;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_transform(const CommonOpts& opts, const std::string& op,
                  const std::string& spec) {
  Pmf p = parse_pmf(spec, opts.trunc_eps);
  if (op == "size-bias") {
    std::cout << pmf_to_json(size_bias(p)) << "\n";
  } else if (op == "eq-pos") {
    std::cout << pmf_to_json(equilibrium_pos(p)) << "\n";
  } else if (op == "eq-nonneg") {
    std::cout << pmf_to_json(equilibrium_nonneg(p)) << "\n";
  } else if (op == "smoothness") {
    SmoothnessValue v = smoothness(p);
    nlohmann::json j;
    j["s1"] = v.s1;
    j["s2"] = v.s2;
    j["shift_overlap_u"] = shift_overlap_u(p);
    std::cout << j.dump(2) << "\n";
  } else {
    throw std::invalid_argument(
        "--op must be one of size-bias, eq-pos, eq-nonneg, smoothness");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric approximation in total variation: exact laws, "
               "equilibrium couplings, and bound validation"};
  app.require_subcommand(1);

  CommonOpts opts;
  apply_env_overrides(opts);
  app.add_option("--seed", opts.seed, "base seed for all randomness");
  app.add_option("--trunc-eps", opts.trunc_eps, "tail truncation budget");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--format", opts.format, "results format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--reps", opts.reps, "Monte Carlo replications");
  app.add_option("--shards", opts.shards, "parallel sampler shards");
  bool validate_only = false;
  app.add_flag("--validate", validate_only,
               "check preconditions and print the resolved config, then exit");

  auto* dist = app.add_subcommand("dist", "distances between two pmfs");
  std::string pspec, qspec;
  dist->add_option("--p", pspec, "first pmf spec")->required();
  dist->add_option("--q", qspec, "second pmf spec")->required();

  auto* transform = app.add_subcommand("transform", "apply a transform");
  std::string op, tspec;
  transform->add_option("--op", op, "size-bias|eq-pos|eq-nonneg|smoothness")
      ->required();
  transform->add_option("--pmf", tspec, "pmf spec")->required();

  auto* stein = app.add_subcommand("stein-check", "Stein solution checks");
  std::size_t stein_count = 500;
  long long stein_bmax = 50;
  stein->add_option("--count", stein_count, "random (B,p) instances");
  stein->add_option("--bmax", stein_bmax, "target sets within 1..bmax");

  auto* gsum = app.add_subcommand("gsum", "geometric sum experiment");
  std::string gsum_x = "ge:0.5";
  double gsum_a = 0.3;
  int gsum_start = 1;
  gsum->add_option("--x", gsum_x, "summand pmf spec");
  gsum->add_option("--a", gsum_a, "geometric count parameter in (0,1]");
  gsum->add_option("--start", gsum_start, "1: N>=1 (Ge), 0: M>=0 (Ge0)")
      ->check(CLI::IsMember({0, 1}));

  auto* gw = app.add_subcommand("gw", "Galton-Watson conditioned generation");
  std::string gw_offspring = "0:0.25,1:0.5,2:0.25";
  std::string gw_grid = "4,8,16,32";
  gw->add_option("--offspring", gw_offspring, "offspring pmf spec");
  gw->add_option("--n-grid", gw_grid, "generation grid");

  auto* ua = app.add_subcommand("ua", "uniform attachment in-degree");
  std::string ua_grid = "1,2,5,10,25,50,100,500";
  ua->add_option("--n-grid", ua_grid, "graph sizes");

  auto* pa_fixed = app.add_subcommand("pa-fixed", "PA fixed-vertex degree");
  long long pa_n = 200;
  std::string pa_i_grid = "1,2,4,8,16,32,64,128,200";
  pa_fixed->add_option("--n", pa_n, "graph size");
  pa_fixed->add_option("--i-grid", pa_i_grid, "vertex grid");

  auto* pa_mix = app.add_subcommand("pa-mixture", "PA uniform-vertex degree");
  std::string pa_n_grid = "50,100,200,400";
  pa_mix->add_option("--n-grid", pa_n_grid, "graph sizes");

  auto* yule = app.add_subcommand("yule-check", "Ge(sqrt(U)) mixture identity");
  long long yule_kmax = 100;
  yule->add_option("--kmax", yule_kmax, "check k = 1..kmax");

  auto* sweep =
      app.add_subcommand("sweep-validity", "main-theorem validity sweep");
  std::size_t sweep_count = 200;
  sweep->add_option("--count", sweep_count, "random instances");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  auto print_resolved = [&](const std::string& experiment,
                            const nlohmann::json& params) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["seed"] = opts.seed;
    j["trunc_eps"] = opts.trunc_eps;
    j["out_dir"] = opts.out_dir;
    j["format"] = opts.format;
    j["reps"] = opts.reps;
    j["shards"] = opts.shards;
    j["params"] = params;
    std::cout << j.dump(2) << "\n";
  };

  try {
    if (validate_only) {
      // cheap precondition pass: parse inputs and run the range/criticality
      // guards, then report the resolved configuration
      if (gsum->parsed()) {
        Pmf x = parse_pmf(gsum_x, opts.trunc_eps);
        gsum_bounds(gsum_a, shift_overlap_u(x), moment(x, 1), moment(x, 2),
                    gsum_start == 1);
        if (gsum_start == 1 && x.min_support() < 1)
          throw std::invalid_argument("positive sums need positive summands");
        print_resolved("gsum",
                       {{"x", gsum_x}, {"a", gsum_a}, {"start", gsum_start}});
      } else if (gw->parsed()) {
        OffspringLaw law =
            OffspringLaw::from_pmf(parse_pmf(gw_offspring, opts.trunc_eps));
        law.require_critical();
        if (law.variance <= 0.0)
          throw std::invalid_argument("offspring variance must be positive");
        parse_grid(gw_grid);
        print_resolved("gw",
                       {{"offspring", gw_offspring}, {"n_grid", gw_grid}});
      } else if (ua->parsed()) {
        for (long long n : parse_grid(ua_grid))
          if (n < 1) throw std::invalid_argument("ua needs n >= 1");
        print_resolved("ua", {{"n_grid", ua_grid}});
      } else if (pa_fixed->parsed()) {
        for (long long i : parse_grid(pa_i_grid))
          if (i < 1 || i > pa_n)
            throw std::invalid_argument("i-grid entry outside 1..n");
        print_resolved("pa-fixed", {{"n", pa_n}, {"i_grid", pa_i_grid}});
      } else if (pa_mix->parsed()) {
        for (long long nn : parse_grid(pa_n_grid))
          if (nn < 1) throw std::invalid_argument("pa needs n >= 1");
        print_resolved("pa-mixture", {{"n_grid", pa_n_grid}});
      } else if (yule->parsed()) {
        if (yule_kmax < 1) throw std::invalid_argument("kmax must be >= 1");
        print_resolved("yule-check", {{"kmax", yule_kmax}});
      } else if (sweep->parsed()) {
        print_resolved("sweep-validity", {{"count", sweep_count}});
      } else if (stein->parsed()) {
        print_resolved("stein-check",
                       {{"count", stein_count}, {"bmax", stein_bmax}});
      } else if (dist->parsed()) {
        parse_pmf(pspec, opts.trunc_eps);
        parse_pmf(qspec, opts.trunc_eps);
        print_resolved("dist", {{"p", pspec}, {"q", qspec}});
      } else if (transform->parsed()) {
        parse_pmf(tspec, opts.trunc_eps);
        print_resolved("transform", {{"op", op}, {"pmf", tspec}});
      }
      return 0;
    }

    if (dist->parsed()) return run_dist(opts, pspec, qspec);
    if (transform->parsed()) return run_transform(opts, op, tspec);
    if (stein->parsed()) return run_stein_check(opts, stein_count, stein_bmax);

    if (gsum->parsed()) {
      Pmf x = parse_pmf(gsum_x, opts.trunc_eps);
      auto reports = gsum_experiment(x, gsum_a, gsum_start, opts.reps,
                                     opts.shards, opts.seed);
      return emit(opts, "gsum",
                  {{"x", gsum_x}, {"a", gsum_a}, {"start", gsum_start}},
                  reports);
    }
    if (gw->parsed()) {
      OffspringLaw law =
          OffspringLaw::from_pmf(parse_pmf(gw_offspring, opts.trunc_eps));
      law.require_critical();
      auto grid_ll = parse_grid(gw_grid);
      std::vector<int> grid(grid_ll.begin(), grid_ll.end());
      auto reports = gw_tv_experiment(law, grid);
      return emit(opts, "gw",
                  {{"offspring", gw_offspring}, {"n_grid", gw_grid}}, reports);
    }
    if (ua->parsed()) {
      auto grid = parse_grid(ua_grid);
      return emit(opts, "ua", {{"n_grid", ua_grid}}, ua_experiment(grid));
    }
    if (pa_fixed->parsed()) {
      auto grid = parse_grid(pa_i_grid);
      for (long long i : grid)
        if (i < 1 || i > pa_n)
          throw std::invalid_argument("i-grid entry outside 1..n");
      return emit(opts, "pa-fixed", {{"n", pa_n}, {"i_grid", pa_i_grid}},
                  pa_fixed_vertex_experiment(pa_n, grid));
    }
    if (pa_mix->parsed()) {
      auto grid = parse_grid(pa_n_grid);
      return emit(opts, "pa-mixture", {{"n_grid", pa_n_grid}},
                  pa_mixture_experiment(grid));
    }
    if (yule->parsed()) {
      double worst = yule_mixture_check(yule_kmax);
      BoundReport row;
      row.theorem_tag = "yule_ge_sqrtu_mixture";
      row.params = {{"kmax", static_cast<double>(yule_kmax)}};
      row.lhs_value = worst;
      row.rhs_value = 1e-8;
      row.hard = true;
      row.pass = worst <= 1e-8;
      return emit(opts, "yule-check", {{"kmax", yule_kmax}}, {row});
    }
    if (sweep->parsed()) {
      auto reports = validity_sweep(sweep_count, opts.seed);
      return emit(opts, "sweep-validity", {{"count", sweep_count}}, reports);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
