#include "richardson/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "richardson/topology.hpp"

namespace richardson {

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double denom = 1.0 + z * z / nn;
  const double centre = (p + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  // Clamp so that the interval always brackets p_hat despite rounding.
  return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

std::string config_digest(const ModelConfig& config) {
  std::ostringstream os;
  char lam[32];
  std::snprintf(lam, sizeof lam, "%.17g", config.lambda);
  os << "d=" << config.dim << ";lambda=" << lam << ";xi1=";
  for (const Site& x : config.xi1) os << x.to_string();
  os << ";xi2=";
  for (const Site& x : config.xi2) os << x.to_string();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Outcome coexistence_trial(const ModelConfig& config, std::int64_t radius, std::uint64_t seed) {
  if (config.xi1.empty() || config.xi2.empty()) {
    throw std::invalid_argument("a coexistence trial needs both initial sets nonempty");
  }
  if (radius < 1) throw std::invalid_argument("trial radius must be at least 1");
  StopCondition stop;
  stop.radius = radius;
  stop.stop_on_type_death = {1, 2};
  Realization real(seed);
  GrowthState state(config, real);
  while (true) {
    const Outcome o = stop_reason(state, stop);
    if (o != Outcome::kRunning) return o;
    state.step();
  }
}

namespace {

template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

EstimateResult estimate(const ModelConfig& config, std::int64_t radius, std::uint64_t n_reps,
                        std::uint64_t master_seed, unsigned threads, bool allow_infertile) {
  config.validate();
  EstimateResult r;
  r.fertile = is_fertile(config.xi1, config.xi2);
  if (!r.fertile && !allow_infertile) {
    throw std::invalid_argument("initial pair is not fertile (override to allow negative controls)");
  }
  std::vector<Outcome> outcomes(n_reps, Outcome::kRunning);
  parallel_for(n_reps, threads, [&](std::uint64_t i) {
    outcomes[i] = coexistence_trial(config, radius, derive_seed(master_seed, i));
  });

  r.dim = config.dim;
  r.lambda = config.lambda;
  r.radius = radius;
  r.n_reps = n_reps;
  r.master_seed = master_seed;
  r.config_digest = config_digest(config);
  for (Outcome o : outcomes) {
    if (o == Outcome::kCoexist) ++r.n_coexist;
    if (o == Outcome::kType1Dead) ++r.n_type1_dead;
    if (o == Outcome::kType2Dead) ++r.n_type2_dead;
  }
  r.p_hat = n_reps ? static_cast<double>(r.n_coexist) / static_cast<double>(n_reps) : 0.0;
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.n_coexist, n_reps);
  return r;
}

std::vector<EstimateResult> sweep(const SweepSpec& spec) {
  std::vector<EstimateResult> rows;
  for (const NamedPair& pair : spec.pairs) {
    for (double lambda : spec.lambdas) {
      ModelConfig cfg{spec.dim, lambda, pair.xi1, pair.xi2};
      for (std::int64_t radius : spec.radii) {
        EstimateResult r = estimate(cfg, radius, spec.n_reps, spec.master_seed, spec.threads, spec.allow_infertile);
        r.label = pair.name;
        rows.push_back(std::move(r));
      }
    }
  }
  return rows;
}

std::vector<double> lambda_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("lambda grid needs lo <= hi and step > 0");
  std::vector<double> out;
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::string csv_header() {
  return "dimension,lambda,R,n_reps,n_coexist,n_type1_dead,n_type2_dead,p_hat,ci_lo,ci_hi,master_seed,"
         "config_digest";
}

std::string csv_row(const EstimateResult& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%.10g,%lld,%llu,%llu,%llu,%llu,%.6f,%.6f,%.6f,%llu,%s", r.dim, r.lambda,
                static_cast<long long>(r.radius), static_cast<unsigned long long>(r.n_reps),
                static_cast<unsigned long long>(r.n_coexist), static_cast<unsigned long long>(r.n_type1_dead),
                static_cast<unsigned long long>(r.n_type2_dead), r.p_hat, r.ci_lo, r.ci_hi,
                static_cast<unsigned long long>(r.master_seed), r.config_digest.c_str());
  return buf;
}

void write_csv(std::ostream& os, const std::vector<EstimateResult>& rows) {
  os << csv_header() << "\r\n";
  for (const EstimateResult& r : rows) os << csv_row(r) << "\r\n";
}

std::pair<ModelConfig, ModelConfig> draw_lemma1_pair(const Lemma1SuiteOptions& opts, std::uint64_t seed) {
  std::uint64_t counter = 0;
  auto bit = [&] { return (stream_word(seed, counter++) >> 63) != 0; };
  const SiteSet window = box_sites(opts.window);

  while (true) {
    SiteSet zeta;
    for (const Site& x : window) {
      if (bit()) zeta.insert(x);
    }
    if (zeta.empty()) continue;
    const SiteSet boundary = inner_boundary(zeta);
    for (int attempt = 0; attempt < 256; ++attempt) {
      ModelConfig a{opts.dim, opts.lambda, {}, {}};
      ModelConfig b{opts.dim, opts.lambda, {}, {}};
      for (const Site& x : zeta) (bit() ? a.xi1 : a.xi2).insert(x);
      for (const Site& x : zeta) (bit() ? b.xi1 : b.xi2).insert(x);
      if (!lemma1_precondition(a.xi1, a.xi2, b.xi1, b.xi2)) continue;
      if (opts.require_path_start &&
          set_intersection(set_intersection(boundary, a.xi1), b.xi1).empty()) {
        continue;
      }
      return {a, b};
    }
  }
}

Lemma1Summary lemma1_suite(const Lemma1SuiteOptions& opts) {
  check_dimension(opts.dim);
  if (opts.window.dim() != opts.dim) throw std::invalid_argument("window dimension differs from dim");
  Lemma1Summary summary;
  summary.n_runs = opts.n_runs;
  StopCondition stop;
  stop.max_events = opts.horizon;
  for (std::uint64_t i = 0; i < opts.n_runs; ++i) {
    const std::uint64_t run_seed = derive_seed(opts.master_seed, i);
    auto [a, b] = draw_lemma1_pair(opts, mix64(run_seed ^ 0xa5a5a5a5a5a5a5a5ULL));
    Lemma1RunRecord rec{a, b};

    std::vector<Trace> traces;
    if (opts.mismatched_seeds) {
      // Independent realizations: the pathwise inclusions have no reason to hold.
      traces.push_back(run_coupled({a}, run_seed, CouplingMode::kShared, stop).traces[0]);
      traces.push_back(run_coupled({b}, derive_seed(run_seed, 1), CouplingMode::kShared, stop).traces[0]);
      traces[0].horizon = traces[1].horizon = std::min(traces[0].horizon, traces[1].horizon);
    } else {
      traces = run_coupled({a, b}, run_seed, CouplingMode::kShared, stop).traces;
    }

    const InclusionReport report = check_inclusions(traces[0], traces[1], set_union(a.xi1, a.xi2));
    rec.inclusions_pass = report.pass;
    rec.checks = report.checks.size();
    if (report.pass) ++summary.n_inclusion_pass;

    const PathTransferReport paths = check_path_transfer(traces[0], traces[1]);
    if (!paths.start_sites.empty()) {
      rec.path_checked = true;
      rec.path_pass = paths.pass;
      rec.path_edges = paths.edges_checked;
      ++summary.n_path_runs;
      if (paths.pass) ++summary.n_path_pass;
    }
    summary.runs.push_back(std::move(rec));
  }
  return summary;
}

}  // namespace richardson
