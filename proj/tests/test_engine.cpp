#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "richardson/engine.hpp"

using namespace richardson;

namespace {

const Site kO{0, 0};
const Site kE{1, 0};
const SiteSet kAxialRing{Site{-1, 0}, Site{1, 0}, Site{0, -1}, Site{0, 1}};

StopCondition events(std::uint64_t n) {
  StopCondition s;
  s.max_events = n;
  return s;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS(ModelConfig{2, 0.5, {kO}, {kO}}.validate());
  CHECK_THROWS(ModelConfig{2, 1.5, {kO}, {kE}}.validate());
  CHECK_THROWS(ModelConfig{1, 0.5, {}, {}}.validate());
  CHECK_THROWS(ModelConfig{2, 0.5, {}, {}}.validate());
  CHECK_THROWS(ModelConfig{3, 0.5, {kO}, {}}.validate());
  CHECK_NOTHROW(ModelConfig{2, 0.0, {kO}, {}}.validate());
  CHECK_THROWS(StopCondition{}.validate());
}

TEST_CASE("rate reduction") {
  const RateReduction a = reduce_rates(2.0, 1.0);
  CHECK(a.lambda == 0.5);
  CHECK(a.time_scale == 2.0);
  CHECK_FALSE(a.relabel);
  const RateReduction b = reduce_rates(1.0, 3.0);
  CHECK(b.lambda == doctest::Approx(1.0 / 3.0));
  CHECK(b.time_scale == 3.0);
  CHECK(b.relabel);
  CHECK_FALSE(reduce_rates(1.0, 1.0).relabel);
  CHECK_THROWS(reduce_rates(0.0, 0.0));
  CHECK_THROWS(reduce_rates(-1.0, 1.0));
}

TEST_CASE("initial state") {
  Realization real(1);
  GrowthState s(ModelConfig{2, 0.7, {kO}, {kE}}, real);
  CHECK(s.clock() == 0.0);
  CHECK(s.events() == 0);
  const auto agenda = s.agenda();
  CHECK(agenda.size() == 6);
  CHECK(std::count_if(agenda.begin(), agenda.end(), [](const Candidate& c) { return c.type == 1; }) == 3);
  CHECK(s.type_active(1));
  CHECK(s.type_active(2));

  Realization real2(1);
  GrowthState one(ModelConfig{2, 0.7, {kO}, {}}, real2);
  const CandidateTimes ct = one.candidate_times();
  CHECK(ct.t2 == kNever);
  CHECK(ct.t1 < kNever);
  CHECK_FALSE(one.type_active(2));
  CHECK(one.gamma_size(2) == 0);
}

TEST_CASE("candidate times pick the earliest scheduled edge") {
  Realization real(5);
  GrowthState s(ModelConfig{2, 0.4, {kO}, {kE}}, real);
  Realization ref(5);
  Time t1 = kNever, t2 = kNever;
  for (const Site& y : neighbors(kO)) {
    if (y != kE) t1 = std::min(t1, ref.next_occurrence(DirectedEdge(kO, y), 0.0).time);
  }
  for (const Site& y : neighbors(kE)) {
    if (y != kO) t2 = std::min(t2, ref.next_accepted(DirectedEdge(kE, y), 0.0, 0.4));
  }
  const CandidateTimes ct = s.candidate_times();
  CHECK(ct.t1 == t1);
  CHECK(ct.t2 == t2);
  const EventRecord ev = s.step();
  CHECK(ev.time == std::min(t1, t2));
  CHECK(ev.infection_type == (t1 <= t2 ? 1 : 2));
}

TEST_CASE("first event: type-1 probability 1/(1+lambda) at lambda = 1") {
  const int n = 100000;
  int type1 = 0;
  for (int i = 0; i < n; ++i) {
    Realization real(derive_seed(77, static_cast<std::uint64_t>(i)));
    GrowthState s(ModelConfig{2, 1.0, {kO}, {kE}}, real);
    type1 += s.step().infection_type == 1;
  }
  CHECK(std::abs(static_cast<double>(type1) / n - 0.5) <= 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("first event from a single seed: Exp(4) time, uniform direction") {
  const int n = 100000;
  double sum = 0.0;
  std::map<Site, int> counts;
  for (int i = 0; i < n; ++i) {
    Realization real(derive_seed(99, static_cast<std::uint64_t>(i)));
    GrowthState s(ModelConfig{2, 1.0, {kO}, {}}, real);
    const EventRecord ev = s.step();
    sum += ev.time;
    ++counts[ev.site];
  }
  CHECK(std::abs(sum / n - 0.25) <= 3.0 * 0.25 / std::sqrt(n));
  CHECK(counts.size() == 4);
  for (const auto& [site, c] : counts) {
    CHECK(std::abs(static_cast<double>(c) / n - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / n));
  }
}

TEST_CASE("invariants along a run: disjointness, growth, agenda exactness, activity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Realization real(seed);
    GrowthState s(ModelConfig{2, 0.6, {kO, Site{3, 3}}, {kE, Site{-2, 1}}}, real);
    bool was_dead[2] = {false, false};
    std::int64_t reach[2] = {s.reach(1), s.reach(2)};
    Time last = 0.0;
    for (int k = 0; k < 300; ++k) {
      const EventRecord ev = s.step();
      CHECK(ev.time > last);
      last = ev.time;
      CHECK(l1_distance(ev.parent, ev.site) == 1);
      CHECK(s.gamma_size(1) + s.gamma_size(2) == 4 + ev.n);
      CHECK(disjoint(s.gamma(1), s.gamma(2)));
      std::vector<DirectedEdge> scheduled;
      for (const Candidate& c : s.agenda()) {
        scheduled.push_back(c.edge);
        CHECK(c.type == s.type_at(c.edge.from));
        CHECK(c.time > s.forest().node(c.edge.from).time);
      }
      CHECK(scheduled == eligible_edges_bruteforce(s));
      for (int t = 1; t <= 2; ++t) {
        if (was_dead[t - 1]) CHECK_FALSE(s.type_active(t));
        was_dead[t - 1] = !s.type_active(t);
        CHECK(s.reach(t) >= reach[t - 1]);
        reach[t - 1] = s.reach(t);
      }
    }
  }
}

TEST_CASE("no skipped occurrences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trace tr = simulate(ModelConfig{2, 0.45, {kO}, {kE, Site{0, 2}}}, seed, events(500));
    CHECK(oracle::skipped_occurrences(tr) == 0);
  }
  const Trace tr3 = simulate(ModelConfig{3, 0.8, {Site{0, 0, 0}}, {Site{1, 0, 0}}}, 3, events(500));
  CHECK(oracle::skipped_occurrences(tr3) == 0);
}

TEST_CASE("one-type run to R = 10") {
  StopCondition stop;
  stop.radius = 10;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Trace tr = simulate(ModelConfig{2, 1.0, {kO}, {}}, seed, stop);
    CHECK(tr.outcome == Outcome::kRadiusReached);
    std::int64_t reach = 0;
    for (const Site& x : tr.final_gamma1) reach = std::max(reach, linf_norm(x));
    CHECK(reach >= 10);
  }
}

TEST_CASE("strangled start: type 2 is dead and stays enclosed") {
  StopCondition stop;
  stop.radius = 12;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trace tr = simulate(ModelConfig{2, 1.0, kAxialRing, {kO}}, seed, stop);
    CHECK(tr.outcome == Outcome::kType2Dead);
    CHECK(tr.final_gamma2 == SiteSet{kO});
  }
  // A larger pocket: type 2 may grow inside but never leaves it.
  SiteSet wall;
  for (const Site& x : box_sites(Box{Site{-3, -3}, Site{3, 3}})) {
    if (std::abs(x[0]) == 3 || std::abs(x[1]) == 3) wall.insert(x);
  }
  const Box pocket{Site{-2, -2}, Site{2, 2}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trace tr = simulate(ModelConfig{2, 1.0, wall, {kO}}, seed, stop);
    CHECK(tr.outcome == Outcome::kType2Dead);
    for (const Site& x : tr.final_gamma2) CHECK(box_contains(pocket, x));
  }
}

TEST_CASE("replay is exact") {
  const ModelConfig cfg{2, 0.3, {kO}, {kE}};
  const Trace a = simulate(cfg, 1234, events(2000));
  const Trace b = simulate(cfg, 1234, events(2000));
  CHECK(a.events == b.events);
  CHECK(a.final_gamma1 == b.final_gamma1);
  const Trace c = simulate(cfg, 1235, events(2000));
  CHECK_FALSE(a.events == c.events);
}

TEST_CASE("lambda = 1 is type-blind") {
  const Trace two = simulate(ModelConfig{2, 1.0, {kO}, {kE}}, 555, events(3000));
  const Trace one = simulate(ModelConfig{2, 1.0, {kO, kE}, {}}, 555, events(3000));
  REQUIRE(two.events.size() == one.events.size());
  for (std::size_t i = 0; i < one.events.size(); ++i) {
    CHECK(two.events[i].time == one.events[i].time);
    CHECK(two.events[i].site == one.events[i].site);
  }
}

TEST_CASE("lambda = 0 with type 1 enclosed stalls") {
  Realization real(2);
  GrowthState s(ModelConfig{2, 0.0, {kO}, kAxialRing}, real);
  CHECK_FALSE(s.type_active(1));
  CHECK(s.type_active(2));
  CHECK(s.next_event_time() == kNever);
  CHECK_THROWS_AS(s.step(), std::logic_error);
  const Trace tr = run(s, events(10));
  CHECK(tr.outcome == Outcome::kStalled);
}

TEST_CASE("death stop rules") {
  StopCondition stop;
  stop.stop_on_type_death = {2};
  const Trace tr = simulate(ModelConfig{2, 1.0, kAxialRing, {kO}}, 0, stop);
  CHECK(tr.outcome == Outcome::kType2Dead);
  CHECK(tr.events.empty());
}

TEST_CASE("stream engine matches a memoryless oracle in law (T_5, KS)") {
  const ModelConfig cfg{2, 0.7, {kO}, {kE}};
  const int n = 4000;
  std::vector<double> engine, gillespie;
  std::mt19937_64 rng(4242);
  for (int i = 0; i < n; ++i) {
    Realization real(derive_seed(8, static_cast<std::uint64_t>(i)));
    GrowthState s(cfg, real);
    for (int k = 0; k < 5; ++k) s.step();
    engine.push_back(s.clock());
    gillespie.push_back(oracle::gillespie_time_of_event(cfg, 5, rng));
  }
  CHECK(oracle::ks_statistic(engine, gillespie) < oracle::ks_critical(0.001, n, n));
}

TEST_CASE("skipped-occurrence audit detects a tampered trace") {
  Trace tr = simulate(ModelConfig{2, 0.45, {kO}, {kE}}, 6, events(200));
  REQUIRE(oracle::skipped_occurrences(tr) == 0);
  // Delay one infection: its parent's occurrence is now skipped.
  tr.events[50].time += 1.0;
  CHECK(oracle::skipped_occurrences(tr) > 0);
}
