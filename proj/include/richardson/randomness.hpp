#ifndef RICHARDSON_RANDOMNESS_HPP
#define RICHARDSON_RANDOMNESS_HPP

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "richardson/lattice.hpp"

namespace richardson {

/// Model time. `kNever` marks an occurrence that does not exist.
using Time = double;
inline constexpr Time kNever = std::numeric_limits<Time>::infinity();

/// Ordered nearest-neighbour pair (from, to). (x,y) and (y,x) are distinct.
struct DirectedEdge {
  Site from;
  Site to;

  DirectedEdge() = default;
  DirectedEdge(const Site& from, const Site& to);
  static DirectedEdge along(const Site& from, int dir);

  int direction() const { return direction_of(from, to); }
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

struct DirectedEdgeHash {
  std::size_t operator()(const DirectedEdge& e) const noexcept;
};

/// One point of a unit-rate Poisson stream with its thinning mark.
struct Occurrence {
  Time time = kNever;
  double mark = 0.0;  // uniform on [0,1); kept by the rate-λ thinning iff mark < λ
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Per-replica seed: mix64(mix64(master ^ 0x5851f42d4c957f2d) + (index + 1) * 0x9e3779b97f4a7c15).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Canonical 64-bit stream key of an edge under a master seed: the seed, the
/// dimension, each `from` coordinate and the direction index are absorbed in
/// that order through mix64.
std::uint64_t edge_stream_key(std::uint64_t master_seed, const DirectedEdge& e);

/// The k-th random word of a stream: mix64(key + (k + 1) * 0x9e3779b97f4a7c15).
std::uint64_t stream_word(std::uint64_t key, std::uint64_t k);

class Realization;

/// Sequential cursor over one edge's occurrences.
class EdgeStream {
 public:
  EdgeStream(Realization& real, DirectedEdge e) : real_(&real), edge_(std::move(e)) {}
  Occurrence next();
  const DirectedEdge& edge() const { return edge_; }

 private:
  Realization* real_;
  DirectedEdge edge_;
  std::size_t index_ = 0;
};

/// Lazily materialised family of per-edge Poisson streams. Occurrence k of an
/// edge is a pure function of (master seed, edge); the cache only memoises.
/// Interarrival of occurrence k is -log(u) with u drawn from word 2k, the mark
/// from word 2k+1.
class Realization {
 public:
  explicit Realization(std::uint64_t master_seed) : seed_(master_seed) {}

  std::uint64_t seed() const { return seed_; }

  EdgeStream edge_stream(const DirectedEdge& e) { return EdgeStream(*this, e); }

  /// k-th occurrence (0-based) of the stream on e.
  const Occurrence& occurrence(const DirectedEdge& e, std::size_t k);

  /// Earliest occurrence with time strictly after `after`.
  Occurrence next_occurrence(const DirectedEdge& e, Time after);

  /// Earliest occurrence after `after` with mark < lambda; kNever when lambda = 0.
  Time next_accepted(const DirectedEdge& e, Time after, double lambda);

  /// Number of processes reading this realization (for cache eviction).
  void attach() { ++attached_; }
  int attached() const { return attached_; }

  /// Signals that one attached process can no longer use e (its target is
  /// infected there). The prefix is dropped once every attached process has
  /// released the edge.
  void release(const DirectedEdge& e);

  std::size_t cached_edges() const { return cache_.size(); }

 private:
  struct Entry {
    std::uint64_t key = 0;
    std::vector<Occurrence> prefix;
    int releases = 0;
  };

  Entry& entry(const DirectedEdge& e);
  static void extend(Entry& entry);

  std::uint64_t seed_;
  int attached_ = 0;
  std::unordered_map<DirectedEdge, Entry, DirectedEdgeHash> cache_;
};

}  // namespace richardson

#endif  // RICHARDSON_RANDOMNESS_HPP
