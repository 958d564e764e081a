#ifndef RICHARDSON_FOREST_HPP
#define RICHARDSON_FOREST_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "richardson/lattice.hpp"
#include "richardson/randomness.hpp"

namespace richardson {

/// One infection: `parent` infected `site` with `infection_type` at `time`.
struct EventRecord {
  std::uint64_t n = 0;  // 1-based event index
  Time time = 0.0;
  Site site;
  int infection_type = 1;
  Site parent;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct ForestNode {
  std::optional<Site> parent;  // empty for roots
  Time time = 0.0;
  int infection_type = 1;
};

/// Parent-pointer storage of the infection graphs Ψ_1 and Ψ_2.
class InfectionForest {
 public:
  using NodeMap = std::unordered_map<Site, ForestNode, SiteHash>;

  InfectionForest() = default;

  /// Builds a forest from raw links without any checks (diagnostics, tests).
  static InfectionForest from_nodes(NodeMap nodes);

  void add_root(const Site& x, int infection_type);

  /// Throws std::invalid_argument on a duplicate site, a missing parent, a
  /// parent of the other type or a non-adjacent parent.
  void record(const EventRecord& event);

  bool contains(const Site& x) const { return nodes_.contains(x); }
  const ForestNode& node(const Site& x) const;
  const NodeMap& nodes() const { return nodes_; }

  std::size_t size() const { return nodes_.size(); }
  std::size_t root_count() const { return roots_; }
  std::size_t edge_count() const { return nodes_.size() - roots_; }

  /// Parent chain from x back to its root (x first).
  std::vector<Site> path_to_seed(const Site& x) const;

 private:
  NodeMap nodes_;
  std::size_t roots_ = 0;
};

struct ForestDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Checks that the type-i vertices are exactly gamma_i, every component is a
/// tree, parents are infected strictly earlier with the same type, and every
/// edge joins nearest neighbours.
ForestDiagnostics validate_forest(const InfectionForest& forest, const SiteSet& gamma1,
                                  const SiteSet& gamma2);

}  // namespace richardson

#endif  // RICHARDSON_FOREST_HPP
