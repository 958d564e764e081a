#include "richardson/forest.hpp"

#include <stdexcept>
#include <unordered_set>

namespace richardson {

InfectionForest InfectionForest::from_nodes(NodeMap nodes) {
  InfectionForest f;
  for (const auto& [site, node] : nodes) {
    if (!node.parent) ++f.roots_;
  }
  f.nodes_ = std::move(nodes);
  return f;
}

void InfectionForest::add_root(const Site& x, int infection_type) {
  if (!nodes_.emplace(x, ForestNode{std::nullopt, 0.0, infection_type}).second) {
    throw std::invalid_argument("site " + x.to_string() + " already in the forest");
  }
  ++roots_;
}

void InfectionForest::record(const EventRecord& event) {
  if (nodes_.contains(event.site)) {
    throw std::invalid_argument("site " + event.site.to_string() + " already infected");
  }
  auto parent = nodes_.find(event.parent);
  if (parent == nodes_.end()) {
    throw std::invalid_argument("parent " + event.parent.to_string() + " is not infected");
  }
  if (parent->second.infection_type != event.infection_type) {
    throw std::invalid_argument("parent " + event.parent.to_string() + " has the other type");
  }
  if (l1_distance(event.parent, event.site) != 1) {
    throw std::invalid_argument("parent and child are not nearest neighbours");
  }
  nodes_.emplace(event.site, ForestNode{event.parent, event.time, event.infection_type});
}

const ForestNode& InfectionForest::node(const Site& x) const {
  auto it = nodes_.find(x);
  if (it == nodes_.end()) throw std::invalid_argument("site " + x.to_string() + " is not infected");
  return it->second;
}

std::vector<Site> InfectionForest::path_to_seed(const Site& x) const {
  std::vector<Site> path{x};
  const ForestNode* n = &node(x);
  while (n->parent) {
    if (path.size() > nodes_.size()) throw std::logic_error("cycle in infection forest");
    path.push_back(*n->parent);
    n = &node(*n->parent);
  }
  return path;
}

ForestDiagnostics validate_forest(const InfectionForest& forest, const SiteSet& gamma1,
                                  const SiteSet& gamma2) {
  ForestDiagnostics diag;
  auto fail = [&](std::string msg) {
    diag.ok = false;
    if (diag.problems.size() < 20) diag.problems.push_back(std::move(msg));
  };

  const auto& nodes = forest.nodes();
  if (nodes.size() != gamma1.size() + gamma2.size()) fail("vertex count differs from |Γ_1|+|Γ_2|");
  for (int type = 1; type <= 2; ++type) {
    for (const Site& x : type == 1 ? gamma1 : gamma2) {
      auto it = nodes.find(x);
      if (it == nodes.end()) {
        fail("site " + x.to_string() + " infected but missing from the forest");
      } else if (it->second.infection_type != type) {
        fail("site " + x.to_string() + " has the wrong type in the forest");
      }
    }
  }

  std::size_t edges = 0;
  std::size_t roots = 0;
  for (const auto& [x, node] : nodes) {
    if (!node.parent) {
      ++roots;
      continue;
    }
    ++edges;
    auto p = nodes.find(*node.parent);
    if (p == nodes.end()) {
      fail("parent of " + x.to_string() + " missing");
      continue;
    }
    if (l1_distance(x, *node.parent) != 1) fail("edge at " + x.to_string() + " is not nearest-neighbour");
    if (p->second.infection_type != node.infection_type) fail("edge at " + x.to_string() + " mixes types");
    if (!(p->second.time < node.time)) {
      fail("parent of " + x.to_string() + " not infected strictly earlier");
    }
  }
  if (edges + roots != nodes.size()) fail("edge count is not |V| - |roots|");

  // Acyclicity: every rootward walk must terminate at a root.
  std::unordered_set<Site, SiteHash> reaches_root;
  for (const auto& [x, node] : nodes) {
    std::vector<Site> walk;
    std::unordered_set<Site, SiteHash> on_walk;
    Site cur = x;
    bool ok = true;
    while (true) {
      if (reaches_root.contains(cur)) break;
      if (!on_walk.insert(cur).second) {
        fail("cycle through " + cur.to_string());
        ok = false;
        break;
      }
      walk.push_back(cur);
      auto it = nodes.find(cur);
      if (it == nodes.end()) {
        ok = false;
        break;
      }
      if (!it->second.parent) break;
      cur = *it->second.parent;
    }
    if (!ok) break;
    reaches_root.insert(walk.begin(), walk.end());
  }
  return diag;
}

}  // namespace richardson
