// Command-line front end: fertility, simulate, couple, estimate, sweep.
//
// Exit codes: 0 success, 1 negative verdict, 2 usage or configuration error,
// 3 I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "richardson/coupling.hpp"
#include "richardson/experiments.hpp"
#include "richardson/io.hpp"
#include "richardson/topology.hpp"

namespace {

using namespace richardson;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FertilityArgs {
  int dim = 2;
  std::string init1, init2;
};

int cmd_fertility(const FertilityArgs& a) {
  const SiteSet xi1 = parse_site_set(a.init1, a.dim);
  const SiteSet xi2 = parse_site_set(a.init2, a.dim);
  const FertilityVerdict v = fertility_verdict(xi1, xi2);
  std::cout << to_string(v) << '\n';
  return v == FertilityVerdict::kFertile ? kExitOk : kExitNegative;
}

struct SimulateArgs {
  int dim = 2;
  double lambda1 = 1.0, lambda2 = 1.0;
  std::string init1, init2;
  std::optional<std::int64_t> radius;
  std::optional<std::uint64_t> max_events;
  std::uint64_t seed = 1;
  std::string trace_out, snapshot_out;
};

int cmd_simulate(const SimulateArgs& a) {
  SimulateRequest req;
  req.dim = a.dim;
  req.lambda1 = a.lambda1;
  req.lambda2 = a.lambda2;
  req.init1 = parse_site_set(a.init1, a.dim);
  req.init2 = parse_site_set(a.init2, a.dim);
  req.radius = a.radius;
  req.max_events = a.max_events;
  req.seed = a.seed;
  if (!req.radius && !req.max_events) throw std::invalid_argument("simulate needs --radius or --max-events");

  const SimulateResult res = run_simulate(req);
  const json doc = trace_document(res);
  if (!a.trace_out.empty()) write_file(a.trace_out, doc.dump(1) + "\n");
  if (!a.snapshot_out.empty()) write_file(a.snapshot_out, snapshot_text(res));
  if (a.trace_out.empty() && a.snapshot_out.empty()) {
    std::cout << "outcome " << doc["outcome"].get<std::string>() << " events " << res.trace.events.size()
              << " time " << res.trace.horizon << '\n';
  }
  return kExitOk;
}

struct CoupleArgs {
  int dim = 2;
  double lambda = 1.0;
  std::string mode = "shared";
  std::string init1, init2, init1b, init2b;
  std::uint64_t seed = 1;
  std::uint64_t horizon = 2000;
  bool check_lemma1 = false;
  std::string out;
};

int cmd_couple(const CoupleArgs& a) {
  const CouplingMode mode = a.mode == "shared" ? CouplingMode::kShared : CouplingMode::kIndependentUntilTau;
  ModelConfig ca{a.dim, a.lambda, parse_site_set(a.init1, a.dim), parse_site_set(a.init2, a.dim)};
  ModelConfig cb{a.dim, a.lambda, parse_site_set(a.init1b, a.dim), parse_site_set(a.init2b, a.dim)};
  ca.validate();
  cb.validate();

  json report;
  report["header"] = {{"artifact", "richardson"},
                      {"version", kArtifactVersion},
                      {"command", "couple"},
                      {"dim", a.dim},
                      {"lambda", a.lambda},
                      {"mode", to_string(mode)},
                      {"init1", format_site_set(ca.xi1)},
                      {"init2", format_site_set(ca.xi2)},
                      {"init1b", format_site_set(cb.xi1)},
                      {"init2b", format_site_set(cb.xi2)},
                      {"seed", a.seed},
                      {"horizon", a.horizon},
                      {"check_lemma1", a.check_lemma1}};

  bool precondition = false;
  if (a.check_lemma1) {
    if (mode != CouplingMode::kShared) throw std::invalid_argument("--check-lemma1 requires --mode shared");
    precondition = lemma1_precondition(ca.xi1, ca.xi2, cb.xi1, cb.xi2);
    if (!precondition) throw std::invalid_argument("pairs do not satisfy the coupling precondition");
  }

  StopCondition stop;
  stop.max_events = a.horizon;
  const CoupledRun run = run_coupled({ca, cb}, a.seed, mode, stop);

  json procs = json::array();
  for (const Trace& t : run.traces) {
    procs.push_back({{"outcome", to_string(t.outcome)},
                     {"n_events", t.events.size()},
                     {"final_time", t.horizon},
                     {"size_type1", t.final_gamma1.size()},
                     {"size_type2", t.final_gamma2.size()}});
  }
  report["processes"] = std::move(procs);
  report["merged_steps"] = run.merged_times.size();
  if (run.tau_box) {
    report["tau_box"] = {{"lo", site_to_json(run.tau_box->lo)}, {"hi", site_to_json(run.tau_box->hi)}};
    report["tau"] = time_to_json(run.tau.value_or(kNever));
  }

  bool pass = true;
  if (a.check_lemma1) {
    const InclusionReport inc = check_inclusions(run.traces[0], run.traces[1], set_union(ca.xi1, ca.xi2));
    const PathTransferReport paths = check_path_transfer(run.traces[0], run.traces[1]);
    report["precondition"] = precondition;
    report["inclusions"] = inclusion_report_json(inc);
    report["path_transfer"] = path_report_json(paths);
    pass = inc.pass && paths.pass;
  }
  report["pass"] = pass;
  write_file(a.out, report.dump(1) + "\n");
  return pass ? kExitOk : kExitNegative;
}

struct EstimateArgs {
  int dim = 2;
  std::optional<double> lambda;
  std::string lambda_grid;
  std::string init1, init2, pairs_file;
  std::optional<std::int64_t> radius;
  std::string radius_schedule;
  std::uint64_t reps = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  bool allow_infertile = false;
};

int cmd_estimate(const EstimateArgs& a, bool single_cell) {
  SweepSpec spec;
  spec.dim = a.dim;
  spec.n_reps = a.reps;
  spec.master_seed = a.seed;
  spec.threads = a.threads;
  spec.allow_infertile = a.allow_infertile;

  if (a.lambda) spec.lambdas.push_back(*a.lambda);
  if (!a.lambda_grid.empty()) {
    for (double l : parse_lambda_grid(a.lambda_grid)) spec.lambdas.push_back(l);
  }
  if (spec.lambdas.empty()) throw std::invalid_argument("give --lambda or --lambda-grid");

  if (a.radius) spec.radii.push_back(*a.radius);
  if (!a.radius_schedule.empty()) {
    for (std::int64_t r : parse_int_list(a.radius_schedule)) spec.radii.push_back(r);
  }
  if (spec.radii.empty()) throw std::invalid_argument("give --radius or --radius-schedule");

  if (!a.pairs_file.empty()) {
    json doc;
    const std::string text = read_file(a.pairs_file);
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("pairs file: ") + e.what());
    }
    spec.pairs = parse_pairs(doc, a.dim);
  } else {
    spec.pairs.push_back({"", parse_site_set(a.init1, a.dim), parse_site_set(a.init2, a.dim)});
  }
  if (single_cell && (spec.lambdas.size() != 1 || spec.radii.size() != 1 || spec.pairs.size() != 1)) {
    throw std::invalid_argument("estimate takes one pair, one lambda and one radius; use sweep for grids");
  }

  std::ostringstream csv;
  write_csv(csv, sweep(spec));
  write_file(a.out, csv.str());
  return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-type Richardson competition on Z^d"};
  app.require_subcommand(1);

  FertilityArgs fa;
  auto* fert = app.add_subcommand("fertility", "Decide whether neither initial set strangles the other");
  fert->add_option("--dim", fa.dim, "Lattice dimension")->default_val(2);
  fert->add_option("--init1", fa.init1, "Type-1 set, e.g. \"(0,0);(2,1)\"")->required();
  fert->add_option("--init2", fa.init2, "Type-2 set")->required();

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Run one process and write its trace");
  sim->add_option("--dim", sa.dim)->default_val(2);
  sim->add_option("--lambda1", sa.lambda1, "Type-1 rate")->default_val(1.0);
  sim->add_option("--lambda2", sa.lambda2, "Type-2 rate")->default_val(1.0);
  sim->add_option("--init1", sa.init1)->required();
  sim->add_option("--init2", sa.init2)->default_val("");
  sim->add_option("--radius", sa.radius, "Stop once every present type reaches this L-inf radius");
  sim->add_option("--max-events", sa.max_events, "Event cap");
  sim->add_option("--seed", sa.seed)->default_val(1);
  sim->add_option("--trace", sa.trace_out, "Trace JSON output");
  sim->add_option("--snapshot", sa.snapshot_out, "Final-state text grid output");

  CoupleArgs ca;
  auto* cpl = app.add_subcommand("couple", "Run two processes on coupled randomness");
  cpl->add_option("--dim", ca.dim)->default_val(2);
  cpl->add_option("--lambda", ca.lambda, "Type-2 rate in [0,1] (type 1 has rate 1)")->default_val(1.0);
  cpl->add_option("--mode", ca.mode)->check(CLI::IsMember({"shared", "until-tau"}))->default_val("shared");
  cpl->add_option("--init1", ca.init1, "First process, type-1 set")->required();
  cpl->add_option("--init2", ca.init2, "First process, type-2 set")->default_val("");
  cpl->add_option("--init1b", ca.init1b, "Second process, type-1 set")->default_val("");
  cpl->add_option("--init2b", ca.init2b, "Second process, type-2 set")->default_val("");
  cpl->add_option("--seed", ca.seed)->default_val(1);
  cpl->add_option("--horizon", ca.horizon, "Merged event horizon")->default_val(2000);
  cpl->add_flag("--check-lemma1", ca.check_lemma1, "Verify the coupling inclusions and path transfer");
  cpl->add_option("--out", ca.out, "Report JSON output (default stdout)");

  EstimateArgs ea;
  auto add_estimate_options = [&ea](CLI::App* sub) {
    sub->add_option("--dim", ea.dim)->default_val(2);
    sub->add_option("--lambda", ea.lambda, "Type-2 rate in [0,1]");
    sub->add_option("--lambda-grid", ea.lambda_grid, "lo:hi:step");
    sub->add_option("--init1", ea.init1);
    sub->add_option("--init2", ea.init2);
    sub->add_option("--pairs", ea.pairs_file, "JSON catalog of initial pairs");
    sub->add_option("--radius", ea.radius);
    sub->add_option("--radius-schedule", ea.radius_schedule, "Comma-separated radii");
    sub->add_option("--reps", ea.reps)->default_val(100);
    sub->add_option("--seed", ea.seed)->default_val(1);
    sub->add_option("--threads", ea.threads)->default_val(1);
    sub->add_option("--out", ea.out, "CSV output (default stdout)");
    sub->add_flag("--allow-infertile", ea.allow_infertile, "Permit strangled pairs");
  };
  auto* est = app.add_subcommand("estimate", "Estimate the coexistence proxy for one configuration");
  add_estimate_options(est);
  auto* swp = app.add_subcommand("sweep", "Coexistence estimates over lambda, pair and radius grids");
  add_estimate_options(swp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*fert) return guarded([&] { return cmd_fertility(fa); });
  if (*sim) return guarded([&] { return cmd_simulate(sa); });
  if (*cpl) return guarded([&] { return cmd_couple(ca); });
  if (*est) return guarded([&] { return cmd_estimate(ea, true); });
  if (*swp) return guarded([&] { return cmd_estimate(ea, false); });
  return kExitUsage;
}
