#ifndef RICHARDSON_ENGINE_HPP
#define RICHARDSON_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "richardson/forest.hpp"
#include "richardson/lattice.hpp"
#include "richardson/randomness.hpp"

namespace richardson {

/// Two-type model with rates (1, lambda), lambda in [0,1].
struct ModelConfig {
  int dim = 2;
  double lambda = 1.0;
  SiteSet xi1;
  SiteSet xi2;

  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Reduction of general rates (lambda1, lambda2) to (1, lambda).
struct RateReduction {
  double lambda = 1.0;      // reduced type-2 rate
  double time_scale = 1.0;  // max(lambda1, lambda2); reduced time = real time * time_scale
  bool relabel = false;     // true when the user's type 2 is the internal type 1
};

RateReduction reduce_rates(double lambda1, double lambda2);

enum class Outcome {
  kRunning,
  kCoexist,        // both types reached L-inf radius R
  kRadiusReached,  // single-type run reached R
  kType1Dead,
  kType2Dead,
  kEventCap,
  kStalled,        // no finite candidate time remains
};

std::string to_string(Outcome o);

struct StopCondition {
  std::optional<std::int64_t> radius;
  std::optional<std::uint64_t> max_events;
  std::set<int> stop_on_type_death;

  void validate() const;
};

struct CandidateTimes {
  Time t1 = kNever;
  Time t2 = kNever;
  std::optional<DirectedEdge> edge1;
  std::optional<DirectedEdge> edge2;

  Time min() const { return t1 <= t2 ? t1 : t2; }
};

/// A scheduled agenda entry: the first relevant occurrence of `edge` after
/// its source became infected.
struct Candidate {
  Time time = kNever;
  int type = 1;
  DirectedEdge edge;
};

/// Growth process state (Γ^1_n, Γ^2_n, T_n) with its eligible-edge agenda.
/// Holds a non-owning reference to the Realization that drives it.
class GrowthState {
 public:
  GrowthState(const ModelConfig& config, Realization& real);

  const ModelConfig& config() const { return config_; }
  Realization& realization() const { return *real_; }

  Time clock() const { return clock_; }
  std::uint64_t events() const { return n_; }

  /// 0 when uninfected, otherwise the infection type.
  int type_at(const Site& x) const;
  SiteSet gamma(int type) const;
  SiteSet infected() const;
  std::size_t gamma_size(int type) const { return size_[idx(type)]; }

  /// Some eligible edge has a type-i source.
  bool type_active(int type) const { return eligible_[idx(type)] > 0; }
  /// Largest L-inf norm over Γ_i, 0 when empty.
  std::int64_t reach(int type) const { return reach_[idx(type)]; }

  CandidateTimes candidate_times();
  Time next_event_time() { return candidate_times().min(); }

  /// Performs the next infection. Throws std::logic_error when no candidate
  /// time is finite.
  EventRecord step();

  /// Currently eligible edges with their scheduled times, sorted.
  std::vector<Candidate> agenda() const;

  const InfectionForest& forest() const { return forest_; }

  /// Re-drives the process from `after` with a different realization
  /// (used by the independent-until-tau coupling).
  void rebind(Realization& real, Time after);

 private:
  struct Later {
    bool operator()(const Candidate& a, const Candidate& b) const;
  };
  using Heap = std::vector<Candidate>;  // binary heap ordered by Later

  static std::size_t idx(int type);
  void schedule_from(const Site& x, int type, Time after);
  void infect(const Site& y, int type, Time t);
  void clean_top(Heap& heap);
  void rebuild_agenda(Time after);

  ModelConfig config_;
  Realization* real_;
  std::unordered_map<Site, std::uint8_t, SiteHash> type_;
  Heap heaps_[2];
  std::size_t eligible_[2] = {0, 0};
  std::size_t size_[2] = {0, 0};
  std::int64_t reach_[2] = {0, 0};
  Time clock_ = 0.0;
  std::uint64_t n_ = 0;
  InfectionForest forest_;
};

/// Full record of one run.
struct Trace {
  ModelConfig config;
  std::uint64_t seed = 0;
  std::vector<EventRecord> events;
  Outcome outcome = Outcome::kRunning;
  /// Time up to which the final state is known to hold.
  Time horizon = 0.0;
  SiteSet final_gamma1;
  SiteSet final_gamma2;
};

/// Stop reason for the current state, or kRunning.
Outcome stop_reason(const GrowthState& state, const StopCondition& stop);

/// Steps until `stop` triggers.
Trace run(GrowthState& state, const StopCondition& stop);

/// Convenience: fresh realization from `seed`, init, run.
Trace simulate(const ModelConfig& config, std::uint64_t seed, const StopCondition& stop);

ForestDiagnostics validate_forest(const GrowthState& state);

/// Every eligible directed edge recomputed from Γ, sorted.
std::vector<DirectedEdge> eligible_edges_bruteforce(const GrowthState& state);

}  // namespace richardson

#endif  // RICHARDSON_ENGINE_HPP
