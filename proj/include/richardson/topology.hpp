#ifndef RICHARDSON_TOPOLOGY_HPP
#define RICHARDSON_TOPOLOGY_HPP

#include <optional>
#include <string>

#include "richardson/lattice.hpp"

namespace richardson {

/// Outcome of the escape search from `seeds` through Z^d minus `blocker`.
struct StrangleCertificate {
  bool strangled = false;
  /// Site strictly outside the blocker's bounding box that was reached, if any.
  std::optional<Site> escape;
  /// Every site visited, in breadth-first order. When strangled this is the
  /// full set reachable from the seeds.
  std::vector<Site> visited;
};

/// Breadth-first escape search. Exact: any site outside the blocker's box
/// starts a monotone ray that never meets the blocker.
StrangleCertificate strangle_certificate(const SiteSet& blocker, const SiteSet& seeds);

/// True iff no infinite self-avoiding path starts in `seeds` and avoids `blocker`.
bool strangles(const SiteSet& blocker, const SiteSet& seeds);

/// Neither set strangles the other.
bool is_fertile(const SiteSet& xi1, const SiteSet& xi2);

enum class FertilityVerdict { kFertile, kXi1StranglesXi2, kXi2StranglesXi1, kMutual };

FertilityVerdict fertility_verdict(const SiteSet& xi1, const SiteSet& xi2);
std::string to_string(FertilityVerdict v);

}  // namespace richardson

#endif  // RICHARDSON_TOPOLOGY_HPP
