#include "richardson/topology.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace richardson {

namespace {

void check_pair(const SiteSet& a, const SiteSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("strangling needs two nonempty sets");
  const int dim = common_dimension({&a, &b});
  check_dimension(dim);
  if (!disjoint(a, b)) throw std::invalid_argument("sets must be disjoint");
}

}  // namespace

StrangleCertificate strangle_certificate(const SiteSet& blocker, const SiteSet& seeds) {
  check_pair(blocker, seeds);
  const Box box = bounding_box(blocker);
  StrangleCertificate cert;
  std::unordered_set<Site, SiteHash> seen;
  std::deque<Site> queue;
  for (const Site& s : seeds) {
    seen.insert(s);
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Site x = queue.front();
    queue.pop_front();
    cert.visited.push_back(x);
    if (!box_contains(box, x)) {
      cert.escape = x;
      return cert;
    }
    for (int dir = 0; dir < neighbor_count(x.dim()); ++dir) {
      Site y = neighbor(x, dir);
      if (blocker.contains(y) || !seen.insert(y).second) continue;
      queue.push_back(y);
    }
  }
  cert.strangled = true;
  return cert;
}

bool strangles(const SiteSet& blocker, const SiteSet& seeds) {
  return strangle_certificate(blocker, seeds).strangled;
}

FertilityVerdict fertility_verdict(const SiteSet& xi1, const SiteSet& xi2) {
  const bool one_strangles_two = strangles(xi1, xi2);
  const bool two_strangles_one = strangles(xi2, xi1);
  if (one_strangles_two && two_strangles_one) return FertilityVerdict::kMutual;
  if (one_strangles_two) return FertilityVerdict::kXi1StranglesXi2;
  if (two_strangles_one) return FertilityVerdict::kXi2StranglesXi1;
  return FertilityVerdict::kFertile;
}

bool is_fertile(const SiteSet& xi1, const SiteSet& xi2) {
  return fertility_verdict(xi1, xi2) == FertilityVerdict::kFertile;
}

std::string to_string(FertilityVerdict v) {
  switch (v) {
    case FertilityVerdict::kFertile: return "fertile";
    case FertilityVerdict::kXi1StranglesXi2: return "xi1-strangles-xi2";
    case FertilityVerdict::kXi2StranglesXi1: return "xi2-strangles-xi1";
    case FertilityVerdict::kMutual: return "mutual";
  }
  return "unknown";
}

}  // namespace richardson
