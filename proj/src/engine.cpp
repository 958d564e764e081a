#include "richardson/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace richardson {

void ModelConfig::validate() const {
  check_dimension(dim);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0,1]");
  if (xi1.empty() && xi2.empty()) throw std::invalid_argument("at least one initial set must be nonempty");
  for (const SiteSet* s : {&xi1, &xi2}) {
    for (const Site& x : *s) {
      if (x.dim() != dim) throw std::invalid_argument("initial site " + x.to_string() + " has wrong dimension");
      if (linf_norm(x) >= kMaxCoordinate / 2) throw std::out_of_range("initial site outside supported range");
    }
  }
  if (!disjoint(xi1, xi2)) throw std::invalid_argument("initial sets overlap");
}

RateReduction reduce_rates(double lambda1, double lambda2) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
    throw std::invalid_argument("rates must be finite and nonnegative");
  }
  const double top = std::max(lambda1, lambda2);
  if (top == 0.0) throw std::invalid_argument("at least one rate must be positive");
  RateReduction r;
  r.time_scale = top;
  r.relabel = lambda2 > lambda1;
  r.lambda = (r.relabel ? lambda1 : lambda2) / top;
  return r;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kRunning: return "running";
    case Outcome::kCoexist: return "coexist-proxy";
    case Outcome::kRadiusReached: return "radius-reached";
    case Outcome::kType1Dead: return "type-1-dead";
    case Outcome::kType2Dead: return "type-2-dead";
    case Outcome::kEventCap: return "event-cap";
    case Outcome::kStalled: return "stalled";
  }
  return "unknown";
}

void StopCondition::validate() const {
  if (!radius && !max_events && stop_on_type_death.empty()) {
    throw std::invalid_argument("stop condition needs a radius, an event cap or a death rule");
  }
  if (radius && (*radius < 0 || *radius >= kMaxCoordinate / 2)) {
    throw std::out_of_range("stop radius outside the supported coordinate range");
  }
  for (int t : stop_on_type_death) {
    if (t != 1 && t != 2) throw std::invalid_argument("type must be 1 or 2");
  }
}

// Min-heap order: earlier time first, ties broken by (from, to).
bool GrowthState::Later::operator()(const Candidate& a, const Candidate& b) const {
  if (a.time != b.time) return a.time > b.time;
  return b.edge < a.edge;
}

std::size_t GrowthState::idx(int type) {
  if (type != 1 && type != 2) throw std::invalid_argument("type must be 1 or 2");
  return static_cast<std::size_t>(type - 1);
}

GrowthState::GrowthState(const ModelConfig& config, Realization& real) : config_(config), real_(&real) {
  config_.validate();
  real_->attach();
  for (int type = 1; type <= 2; ++type) {
    for (const Site& x : type == 1 ? config_.xi1 : config_.xi2) {
      type_.emplace(x, static_cast<std::uint8_t>(type));
      forest_.add_root(x, type);
      ++size_[idx(type)];
      reach_[idx(type)] = std::max(reach_[idx(type)], linf_norm(x));
    }
  }
  for (const auto& [x, type] : type_) {
    for (int dir = 0; dir < neighbor_count(x.dim()); ++dir) {
      real_->release(DirectedEdge::along(neighbor(x, dir), (2 * x.dim() - 1 - dir)));
    }
  }
  rebuild_agenda(0.0);
}

int GrowthState::type_at(const Site& x) const {
  auto it = type_.find(x);
  return it == type_.end() ? 0 : it->second;
}

SiteSet GrowthState::gamma(int type) const {
  SiteSet out;
  for (const auto& [x, t] : type_) {
    if (t == type) out.insert(x);
  }
  return out;
}

SiteSet GrowthState::infected() const {
  SiteSet out;
  for (const auto& [x, t] : type_) out.insert(x);
  return out;
}

void GrowthState::schedule_from(const Site& x, int type, Time after) {
  for (int dir = 0; dir < neighbor_count(x.dim()); ++dir) {
    DirectedEdge e = DirectedEdge::along(x, dir);
    if (type_.contains(e.to)) continue;
    ++eligible_[idx(type)];
    const Time t = type == 1 ? real_->next_occurrence(e, after).time
                             : real_->next_accepted(e, after, config_.lambda);
    Heap& heap = heaps_[idx(type)];
    heap.push_back({t, type, std::move(e)});
    std::push_heap(heap.begin(), heap.end(), Later{});
  }
}

void GrowthState::rebuild_agenda(Time after) {
  heaps_[0].clear();
  heaps_[1].clear();
  eligible_[0] = eligible_[1] = 0;
  for (const auto& [x, type] : type_) schedule_from(x, type, after);
}

void GrowthState::rebind(Realization& real, Time after) {
  real_ = &real;
  real_->attach();
  rebuild_agenda(after);
}

void GrowthState::infect(const Site& y, int type, Time t) {
  type_.emplace(y, static_cast<std::uint8_t>(type));
  ++size_[idx(type)];
  reach_[idx(type)] = std::max(reach_[idx(type)], linf_norm(y));
  const int d = y.dim();
  for (int dir = 0; dir < neighbor_count(d); ++dir) {
    const Site z = neighbor(y, dir);
    // Edge z -> y; its direction is the reverse of dir.
    const int zt = type_at(z);
    if (zt != 0) --eligible_[idx(zt)];
    real_->release(DirectedEdge::along(z, 2 * d - 1 - dir));
  }
  schedule_from(y, type, t);
}

void GrowthState::clean_top(Heap& heap) {
  while (!heap.empty() && type_.contains(heap.front().edge.to)) {
    std::pop_heap(heap.begin(), heap.end(), Later{});
    heap.pop_back();
  }
}

CandidateTimes GrowthState::candidate_times() {
  CandidateTimes ct;
  for (int type = 1; type <= 2; ++type) {
    Heap& heap = heaps_[idx(type)];
    clean_top(heap);
    if (heap.empty() || heap.front().time == kNever) continue;
    (type == 1 ? ct.t1 : ct.t2) = heap.front().time;
    (type == 1 ? ct.edge1 : ct.edge2) = heap.front().edge;
  }
  return ct;
}

EventRecord GrowthState::step() {
  const CandidateTimes ct = candidate_times();
  if (ct.t1 == kNever && ct.t2 == kNever) throw std::logic_error("no eligible edge with a finite time");
  const int type = ct.t1 <= ct.t2 ? 1 : 2;
  Heap& heap = heaps_[idx(type)];
  std::pop_heap(heap.begin(), heap.end(), Later{});
  const Candidate c = std::move(heap.back());
  heap.pop_back();

  clock_ = c.time;
  ++n_;
  EventRecord ev{n_, c.time, c.edge.to, type, c.edge.from};
  forest_.record(ev);
  infect(c.edge.to, type, c.time);
  return ev;
}

std::vector<Candidate> GrowthState::agenda() const {
  std::vector<Candidate> out;
  for (const Heap& heap : heaps_) {
    for (const Candidate& c : heap) {
      if (!type_.contains(c.edge.to)) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.edge < b.edge; });
  return out;
}

Outcome stop_reason(const GrowthState& state, const StopCondition& stop) {
  const ModelConfig& cfg = state.config();
  if (stop.radius) {
    const bool need1 = !cfg.xi1.empty();
    const bool need2 = !cfg.xi2.empty();
    const bool ok1 = !need1 || state.reach(1) >= *stop.radius;
    const bool ok2 = !need2 || state.reach(2) >= *stop.radius;
    if (ok1 && ok2) return need1 && need2 ? Outcome::kCoexist : Outcome::kRadiusReached;
  }
  for (int type = 1; type <= 2; ++type) {
    if (state.type_active(type)) continue;
    const bool nonempty = state.gamma_size(type) > 0;
    const bool blocks_radius = stop.radius && nonempty && state.reach(type) < *stop.radius;
    if (stop.stop_on_type_death.contains(type) || blocks_radius) {
      return type == 1 ? Outcome::kType1Dead : Outcome::kType2Dead;
    }
  }
  if (stop.max_events && state.events() >= *stop.max_events) return Outcome::kEventCap;
  return Outcome::kRunning;
}

namespace {

void finish(Trace& trace, const GrowthState& state, Outcome outcome) {
  trace.outcome = outcome;
  trace.horizon = state.clock();
  trace.final_gamma1 = state.gamma(1);
  trace.final_gamma2 = state.gamma(2);
}

}  // namespace

Trace run(GrowthState& state, const StopCondition& stop) {
  stop.validate();
  Trace trace;
  trace.config = state.config();
  trace.seed = state.realization().seed();
  while (true) {
    Outcome o = stop_reason(state, stop);
    if (o == Outcome::kRunning && state.next_event_time() == kNever) o = Outcome::kStalled;
    if (o != Outcome::kRunning) {
      finish(trace, state, o);
      return trace;
    }
    trace.events.push_back(state.step());
  }
}

Trace simulate(const ModelConfig& config, std::uint64_t seed, const StopCondition& stop) {
  Realization real(seed);
  GrowthState state(config, real);
  return run(state, stop);
}

ForestDiagnostics validate_forest(const GrowthState& state) {
  return validate_forest(state.forest(), state.gamma(1), state.gamma(2));
}

std::vector<DirectedEdge> eligible_edges_bruteforce(const GrowthState& state) {
  std::vector<DirectedEdge> out;
  for (const Site& x : state.infected()) {
    for (const Site& y : neighbors(x)) {
      if (state.type_at(y) == 0) out.emplace_back(x, y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace richardson
