#include "richardson/coupling.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace richardson {

std::string to_string(CouplingMode m) {
  return m == CouplingMode::kShared ? "shared" : "until-tau";
}

CoupledRun run_coupled(const std::vector<ModelConfig>& configs, std::uint64_t seed, CouplingMode mode,
                       const StopCondition& stop) {
  stop.validate();
  if (configs.empty()) throw std::invalid_argument("no processes to couple");
  for (const ModelConfig& c : configs) {
    c.validate();
    if (c.dim != configs.front().dim) throw std::invalid_argument("coupled processes differ in dimension");
    if (c.lambda != configs.front().lambda) throw std::invalid_argument("coupled processes differ in lambda");
  }
  const std::size_t n = configs.size();

  // Realizations: [0] shared; in until-tau mode [1..n] per process.
  std::vector<std::unique_ptr<Realization>> reals;
  std::vector<GrowthState> states;
  states.reserve(n);
  if (mode == CouplingMode::kShared) {
    reals.push_back(std::make_unique<Realization>(seed));
    for (const ModelConfig& c : configs) states.emplace_back(c, *reals[0]);
  } else {
    reals.push_back(std::make_unique<Realization>(derive_seed(seed, n)));
    for (std::size_t i = 0; i < n; ++i) {
      reals.push_back(std::make_unique<Realization>(derive_seed(seed, i)));
      states.emplace_back(configs[i], *reals.back());
    }
  }

  CoupledRun out;
  out.traces.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.traces[i].config = configs[i];
    out.traces[i].seed = seed;
  }

  // τ bookkeeping on process 0.
  std::size_t box_remaining = 0;
  if (mode == CouplingMode::kIndependentUntilTau) {
    SiteSet all;
    for (const ModelConfig& c : configs) {
      all.insert(c.xi1.begin(), c.xi1.end());
      all.insert(c.xi2.begin(), c.xi2.end());
    }
    out.tau_box = enlarge(bounding_box(all), 2);
    for_each_in_box(*out.tau_box, [&](const Site& x) {
      if (states[0].type_at(x) == 0) ++box_remaining;
    });
    if (box_remaining == 0) {
      out.tau = 0.0;
      for (GrowthState& s : states) s.rebind(*reals[0], 0.0);
    }
  }

  StopCondition per_process = stop;
  per_process.max_events.reset();
  const bool has_process_rule = per_process.radius || !per_process.stop_on_type_death.empty();

  std::vector<bool> active(n, true);
  Time now = 0.0;
  auto freeze = [&](std::size_t i, Outcome o) {
    active[i] = false;
    Trace& t = out.traces[i];
    t.outcome = o;
    t.horizon = now;
    t.final_gamma1 = states[i].gamma(1);
    t.final_gamma2 = states[i].gamma(2);
  };

  while (true) {
    if (has_process_rule) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        const Outcome o = stop_reason(states[i], per_process);
        if (o != Outcome::kRunning) freeze(i, o);
      }
    }
    if (std::none_of(active.begin(), active.end(), [](bool a) { return a; })) break;
    if (stop.max_events && out.merged_times.size() >= *stop.max_events) {
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) freeze(i, Outcome::kEventCap);
      }
      break;
    }

    Time t = kNever;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) t = std::min(t, states[i].next_event_time());
    }
    if (t == kNever) {
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) freeze(i, Outcome::kStalled);
      }
      break;
    }

    now = t;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || states[i].next_event_time() != t) continue;
      EventRecord ev = states[i].step();
      if (i == 0 && box_remaining > 0 && box_contains(*out.tau_box, ev.site)) --box_remaining;
      out.traces[i].events.push_back(std::move(ev));
    }
    out.merged_times.push_back(t);

    if (mode == CouplingMode::kIndependentUntilTau && !out.tau && box_remaining == 0) {
      out.tau = t;
      for (GrowthState& s : states) s.rebind(*reals[0], t);
    }
  }
  return out;
}

bool lemma1_precondition(const SiteSet& z1, const SiteSet& z2, const SiteSet& z1p, const SiteSet& z2p) {
  if (!disjoint(z1, z2) || !disjoint(z1p, z2p)) throw std::invalid_argument("each pair must be disjoint");
  const SiteSet zeta = set_union(z1, z2);
  if (zeta != set_union(z1p, z2p)) return false;
  const SiteSet boundary = inner_boundary(zeta);
  return is_subset(set_intersection(z2, boundary), set_intersection(z2p, boundary));
}

namespace {

using TypeMap = std::unordered_map<Site, int, SiteHash>;

TypeMap initial_types(const ModelConfig& c) {
  TypeMap m;
  for (const Site& x : c.xi1) m.emplace(x, 1);
  for (const Site& x : c.xi2) m.emplace(x, 2);
  return m;
}

int type_in(const TypeMap& m, const Site& x) {
  auto it = m.find(x);
  return it == m.end() ? 0 : it->second;
}

SiteSet members_of_type(const TypeMap& m, int type) {
  SiteSet out;
  for (const auto& [x, t] : m) {
    if (t == type) out.insert(x);
  }
  return out;
}

}  // namespace

InclusionReport check_inclusions(const Trace& a, const Trace& b, const SiteSet& zeta) {
  const ModelConfig& ca = a.config;
  const ModelConfig& cb = b.config;
  if (!lemma1_precondition(ca.xi1, ca.xi2, cb.xi1, cb.xi2)) {
    throw std::invalid_argument("initial configurations do not satisfy the coupling precondition");
  }
  if (zeta != set_union(ca.xi1, ca.xi2)) throw std::invalid_argument("zeta is not the common initial union");
  const SiteSet core = interior(zeta);

  TypeMap ma = initial_types(ca);
  TypeMap mb = initial_types(cb);
  // Violation counters for the three inclusions.
  long v1 = 0, v2 = 0, v3 = 0;
  for (const auto& [x, t] : mb) {
    if (core.contains(x)) continue;
    if (t == 1 && type_in(ma, x) != 1) ++v1;
  }
  for (const auto& [x, t] : ma) {
    if (core.contains(x)) continue;
    if (t == 2 && type_in(mb, x) != 2) ++v2;
  }

  InclusionReport report;
  report.horizon = std::min(a.horizon, b.horizon);
  auto record = [&](Time t) {
    InclusionCheck c{t, v1 == 0, v2 == 0, v3 == 0};
    report.checks.push_back(c);
    if (!c.ok() && !report.first_violation) {
      report.pass = false;
      report.first_violation = InclusionViolation{t, report.checks.size() - 1, members_of_type(ma, 1),
                                                  members_of_type(ma, 2), members_of_type(mb, 1),
                                                  members_of_type(mb, 2)};
    }
  };
  record(0.0);

  auto apply_a = [&](const EventRecord& ev) {
    const Site& x = ev.site;
    const int tb = type_in(mb, x);
    if (tb != 0) --v3;
    if (!core.contains(x)) {
      if (ev.infection_type == 1 && tb == 1) --v1;
      if (ev.infection_type == 2 && tb != 2) ++v2;
    }
    ma.emplace(x, ev.infection_type);
  };
  auto apply_b = [&](const EventRecord& ev) {
    const Site& x = ev.site;
    const int ta = type_in(ma, x);
    if (ta == 0) ++v3;
    if (!core.contains(x)) {
      if (ev.infection_type == 1 && ta != 1) ++v1;
      if (ev.infection_type == 2 && ta == 2) --v2;
    }
    mb.emplace(x, ev.infection_type);
  };

  std::size_t ia = 0, ib = 0;
  while (true) {
    const Time ta = ia < a.events.size() ? a.events[ia].time : kNever;
    const Time tb = ib < b.events.size() ? b.events[ib].time : kNever;
    const Time t = std::min(ta, tb);
    if (t == kNever || t > report.horizon) break;
    while (ia < a.events.size() && a.events[ia].time == t) apply_a(a.events[ia++]);
    while (ib < b.events.size() && b.events[ib].time == t) apply_b(b.events[ib++]);
    record(t);
  }
  return report;
}

PathTransferReport check_path_transfer(const Trace& a, const Trace& b) {
  const ModelConfig& ca = a.config;
  const ModelConfig& cb = b.config;
  const SiteSet zeta = set_union(ca.xi1, ca.xi2);
  PathTransferReport report;
  for (const Site& x : set_intersection(set_intersection(inner_boundary(zeta), ca.xi1), cb.xi1)) {
    report.start_sites.push_back(x);
  }
  const Time horizon = std::min(a.horizon, b.horizon);

  std::unordered_map<Site, const EventRecord*, SiteHash> in_b;
  for (const EventRecord& ev : b.events) in_b.emplace(ev.site, &ev);

  // Events arrive in time order, so a parent is classified before its child.
  std::unordered_map<Site, bool, SiteHash> in_subtree;
  for (const Site& x : report.start_sites) in_subtree.emplace(x, true);
  for (const EventRecord& ev : a.events) {
    if (ev.time > horizon) break;
    if (ev.infection_type != 1 || !in_subtree.contains(ev.parent)) continue;
    in_subtree.emplace(ev.site, true);
    ++report.edges_checked;
    auto it = in_b.find(ev.site);
    const EventRecord* other = it == in_b.end() ? nullptr : it->second;
    if (!other || other->infection_type != 1 || !(other->parent == ev.parent) || other->time > ev.time) {
      report.pass = false;
      if (report.failures.size() < 20) {
        report.failures.push_back("edge " + ev.parent.to_string() + "->" + ev.site.to_string() +
                                  " missing from Ψ_1 of the second process");
      }
    }
  }
  return report;
}

Time tau_box_covered(const Trace& trace, const Box& box) {
  const ModelConfig& c = trace.config;
  std::size_t remaining = 0;
  for_each_in_box(box, [&](const Site& x) {
    if (!c.xi1.contains(x) && !c.xi2.contains(x)) ++remaining;
  });
  if (remaining == 0) return 0.0;
  for (const EventRecord& ev : trace.events) {
    if (box_contains(box, ev.site) && --remaining == 0) return ev.time;
  }
  return kNever;
}

Time first_reach_time(const Trace& trace, int type, std::int64_t radius) {
  for (const Site& x : type == 1 ? trace.config.xi1 : trace.config.xi2) {
    if (linf_norm(x) >= radius) return 0.0;
  }
  for (const EventRecord& ev : trace.events) {
    if (ev.infection_type == type && linf_norm(ev.site) >= radius) return ev.time;
  }
  return kNever;
}

}  // namespace richardson
