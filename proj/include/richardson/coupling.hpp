#ifndef RICHARDSON_COUPLING_HPP
#define RICHARDSON_COUPLING_HPP

#include <optional>
#include <string>
#include <vector>

#include "richardson/engine.hpp"

namespace richardson {

enum class CouplingMode {
  kShared,              // all processes read one realization from time 0
  kIndependentUntilTau  // own realizations until the first process covers B_xi^{+2}, shared after
};

std::string to_string(CouplingMode m);

struct CoupledRun {
  std::vector<Trace> traces;
  /// Merged event times {T~_n}, n >= 1; one entry per merged step.
  std::vector<Time> merged_times;
  /// Independent-until-tau only: the switch box and the switch time.
  std::optional<Box> tau_box;
  std::optional<Time> tau;
};

/// Runs several processes through one merged event loop. `stop.max_events`
/// counts merged steps; radius and death rules freeze individual processes.
CoupledRun run_coupled(const std::vector<ModelConfig>& configs, std::uint64_t seed, CouplingMode mode,
                       const StopCondition& stop);

/// zeta_1 ∪ zeta_2 = zeta_1' ∪ zeta_2' and zeta_2 ∩ ∂zeta ⊆ zeta_2' ∩ ∂zeta.
/// Throws std::invalid_argument when a pair is not disjoint.
bool lemma1_precondition(const SiteSet& z1, const SiteSet& z2, const SiteSet& z1p, const SiteSet& z2p);

struct InclusionCheck {
  Time time = 0.0;
  bool inclusion1 = true;  // Γ_1(t) \ ζ° ⊇ Γ_1'(t) \ ζ°
  bool inclusion2 = true;  // Γ_2(t) \ ζ° ⊆ Γ_2'(t) \ ζ°
  bool inclusion3 = true;  // Γ(t) ⊇ Γ'(t)
  bool ok() const { return inclusion1 && inclusion2 && inclusion3; }
};

struct InclusionViolation {
  Time time = 0.0;
  std::size_t check_index = 0;
  SiteSet gamma1_a, gamma2_a, gamma1_b, gamma2_b;
};

struct InclusionReport {
  bool pass = true;
  std::vector<InclusionCheck> checks;  // t = 0 and every merged event time up to the common horizon
  std::optional<InclusionViolation> first_violation;
  Time horizon = 0.0;
};

/// Evaluates the three inclusions at every merged event time of two traces
/// from a shared-realization coupled run. Throws std::invalid_argument when
/// the traces do not satisfy lemma1_precondition or zeta is not their union.
InclusionReport check_inclusions(const Trace& a, const Trace& b, const SiteSet& zeta);

struct PathTransferReport {
  std::vector<Site> start_sites;  // ∂ζ ∩ ζ_1 ∩ ζ_1'
  std::size_t edges_checked = 0;
  bool pass = true;
  std::vector<std::string> failures;
};

/// For every start site x ∈ ∂ζ ∩ ζ_1 ∩ ζ_1', every edge of Ψ_1 of `a` in the
/// subtree rooted at x must appear in Ψ_1 of `b` no later than in `a`.
PathTransferReport check_path_transfer(const Trace& a, const Trace& b);

/// First time at which box ⊆ Γ(t), or kNever within the trace.
Time tau_box_covered(const Trace& trace, const Box& box);

/// First event time at which type `type` reaches L-inf radius R (0 if already
/// at start), kNever if not within the trace.
Time first_reach_time(const Trace& trace, int type, std::int64_t radius);

}  // namespace richardson

#endif  // RICHARDSON_COUPLING_HPP
