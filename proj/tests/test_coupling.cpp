#include <doctest.h>

#include "richardson/coupling.hpp"
#include "richardson/experiments.hpp"

using namespace richardson;

namespace {

const Site kO{0, 0};
const Site kE{1, 0};

StopCondition horizon(std::uint64_t n) {
  StopCondition s;
  s.max_events = n;
  return s;
}

}  // namespace

TEST_CASE("lemma1 precondition") {
  CHECK(lemma1_precondition({kO}, {kE}, {}, {kO, kE}));
  CHECK(lemma1_precondition({kO}, {kE}, {kO}, {kE}));
  // Roles swapped: the second pair has strictly fewer type-2 boundary sites.
  CHECK_FALSE(lemma1_precondition({}, {kO, kE}, {kO}, {kE}));
  // Different unions.
  CHECK_FALSE(lemma1_precondition({kO}, {kE}, {kO}, {Site{0, 1}}));
  CHECK_THROWS_AS(lemma1_precondition({kO}, {kO}, {kO}, {kE}), std::invalid_argument);

  // Interior type-2 sites are unconstrained.
  const SiteSet block = box_sites(Box{Site{-1, -1}, Site{1, 1}});
  SiteSet rim = block;
  rim.erase(kO);
  CHECK(lemma1_precondition(rim, {kO}, block, {}));
}

TEST_CASE("identical configs in shared mode give identical traces") {
  const ModelConfig cfg{2, 0.6, {kO}, {kE}};
  const CoupledRun run = run_coupled({cfg, cfg}, 11, CouplingMode::kShared, horizon(500));
  REQUIRE(run.traces.size() == 2);
  CHECK(run.traces[0].events == run.traces[1].events);
  CHECK(run.merged_times.size() == 500);
  const InclusionReport rep = check_inclusions(run.traces[0], run.traces[1], {kO, kE});
  CHECK(rep.pass);
  CHECK(rep.checks.size() == 501);
  // Each coupled trace equals the stand-alone run on the same seed.
  const Trace alone = simulate(cfg, 11, horizon(500));
  CHECK(alone.events == run.traces[0].events);
}

TEST_CASE("lambda = 1: (xi1, xi2) and (xi1 ∪ xi2, ∅) evolve identically in shared mode") {
  const ModelConfig a{2, 1.0, {kO}, {kE}};
  const ModelConfig b{2, 1.0, {kO, kE}, {}};
  const CoupledRun run = run_coupled({a, b}, 3, CouplingMode::kShared, horizon(1000));
  REQUIRE(run.traces[0].events.size() == run.traces[1].events.size());
  for (std::size_t i = 0; i < run.traces[0].events.size(); ++i) {
    CHECK(run.traces[0].events[i].time == run.traces[1].events[i].time);
    CHECK(run.traces[0].events[i].site == run.traces[1].events[i].site);
  }
  // Every merged step is simultaneous in both processes.
  CHECK(run.merged_times.size() == 1000);
}

TEST_CASE("shared-mode inclusions hold; mismatched seeds break them") {
  Lemma1SuiteOptions opts;
  opts.n_runs = 40;
  opts.lambda = 0.6;
  opts.window = Box{Site{-1, -1}, Site{1, 1}};
  opts.horizon = 600;
  opts.master_seed = 5;
  const Lemma1Summary ok = lemma1_suite(opts);
  CHECK(ok.n_inclusion_pass == 40);
  CHECK(ok.all_pass());

  opts.mismatched_seeds = true;
  const Lemma1Summary bad = lemma1_suite(opts);
  CHECK(bad.n_inclusion_pass < 40);
}

TEST_CASE("check_inclusions refuses unmet preconditions") {
  const ModelConfig a{2, 0.6, {}, {kO, kE}};
  const ModelConfig b{2, 0.6, {kO}, {kE}};
  const CoupledRun run = run_coupled({a, b}, 1, CouplingMode::kShared, horizon(50));
  CHECK_THROWS_AS(check_inclusions(run.traces[0], run.traces[1], {kO, kE}), std::invalid_argument);
  const CoupledRun fine = run_coupled({b, a}, 1, CouplingMode::kShared, horizon(50));
  CHECK_THROWS_AS(check_inclusions(fine.traces[0], fine.traces[1], {kO}), std::invalid_argument);
  CHECK(check_inclusions(fine.traces[0], fine.traces[1], {kO, kE}).pass);
}

TEST_CASE("truncated reach comparison: type 2 of B reaches R no later than type 2 of A") {
  Lemma1SuiteOptions opts;
  opts.lambda = 0.9;
  opts.window = Box{Site{-1, -1}, Site{1, 1}};
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto [a, b] = draw_lemma1_pair(opts, i);
    const CoupledRun run = run_coupled({a, b}, i, CouplingMode::kShared, horizon(1500));
    for (std::int64_t r : {3, 6, 9}) {
      const Time ta = first_reach_time(run.traces[0], 2, r);
      if (ta != kNever) CHECK(first_reach_time(run.traces[1], 2, r) <= ta);
    }
  }
}

TEST_CASE("path transfer on qualifying runs") {
  Lemma1SuiteOptions opts;
  opts.n_runs = 20;
  opts.lambda = 0.6;
  opts.window = Box{Site{-1, -1}, Site{1, 1}};
  opts.horizon = 400;
  opts.master_seed = 99;
  opts.require_path_start = true;
  const Lemma1Summary s = lemma1_suite(opts);
  CHECK(s.n_path_runs == 20);
  CHECK(s.n_path_pass == 20);
  std::size_t edges = 0;
  for (const auto& r : s.runs) edges += r.path_edges;
  CHECK(edges > 0);
}

TEST_CASE("tau detection") {
  const ModelConfig cfg{2, 0.5, {kO}, {kE}};
  const Trace tr = simulate(cfg, 4, horizon(400));
  CHECK(tau_box_covered(tr, Box{kO, kO}) == 0.0);
  const Time small = tau_box_covered(tr, Box{Site{-1, -1}, Site{1, 1}});
  const Time large = tau_box_covered(tr, Box{Site{-3, -3}, Site{3, 3}});
  CHECK(small <= large);
  CHECK(tau_box_covered(tr, Box{Site{-40, -40}, Site{40, 40}}) == kNever);
}

TEST_CASE("independent-until-tau mode") {
  const ModelConfig a{2, 0.5, {kO}, {kE}};
  const ModelConfig b{2, 0.5, {Site{0, 1}}, {Site{-1, 0}}};

  // tau not reached: both stay on their own realizations.
  const CoupledRun early = run_coupled({a, b}, 21, CouplingMode::kIndependentUntilTau, horizon(5));
  CHECK_FALSE(early.tau.has_value());
  const Trace a_alone = simulate(a, derive_seed(21, 0), horizon(5));
  REQUIRE(early.traces[0].events.size() <= a_alone.events.size());
  for (std::size_t i = 0; i < early.traces[0].events.size(); ++i) {
    CHECK(early.traces[0].events[i] == a_alone.events[i]);
  }

  const CoupledRun run = run_coupled({a, b}, 21, CouplingMode::kIndependentUntilTau, horizon(4000));
  REQUIRE(run.tau.has_value());
  REQUIRE(run.tau_box.has_value());
  CHECK(*run.tau_box == Box{Site{-3, -2}, Site{3, 3}});
  CHECK(tau_box_covered(run.traces[0], *run.tau_box) == *run.tau);

  // Identical processes coincide before and after the switch.
  const CoupledRun same = run_coupled({a, a}, 8, CouplingMode::kIndependentUntilTau, horizon(4000));
  REQUIRE(same.tau.has_value());
  std::vector<EventRecord> after0, after1;
  for (const auto& ev : same.traces[0].events) {
    if (ev.time > *same.tau) after0.push_back(ev);
  }
  for (const auto& ev : same.traces[1].events) {
    if (ev.time > *same.tau) after1.push_back(ev);
  }
  // States differ at tau (independent streams) unless by chance; the shared
  // phase must coincide exactly when the states at tau agree.
  SiteSet g0, g1;
  for (const auto& ev : same.traces[0].events) {
    if (ev.time <= *same.tau) g0.insert(ev.site);
  }
  for (const auto& ev : same.traces[1].events) {
    if (ev.time <= *same.tau) g1.insert(ev.site);
  }
  if (g0 == g1) CHECK(after0 == after1);
}

TEST_CASE("equal states rebound to one realization continue identically") {
  const ModelConfig a{2, 0.7, {kO, Site{0, 1}}, {kE}};
  Realization own0(1), own1(2), shared(3);
  GrowthState s0(a, own0), s1(a, own1);
  s0.rebind(shared, 0.0);
  s1.rebind(shared, 0.0);
  for (int k = 0; k < 300; ++k) CHECK(s0.step() == s1.step());
}

TEST_CASE("coupled configs must agree on dimension and lambda") {
  const ModelConfig a{2, 0.5, {kO}, {kE}};
  const ModelConfig b{2, 0.6, {kO}, {kE}};
  CHECK_THROWS_AS(run_coupled({a, b}, 1, CouplingMode::kShared, horizon(10)), std::invalid_argument);
  const ModelConfig c{3, 0.5, {Site{0, 0, 0}}, {}};
  CHECK_THROWS_AS(run_coupled({a, c}, 1, CouplingMode::kShared, horizon(10)), std::invalid_argument);
}
