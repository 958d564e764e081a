#ifndef RICHARDSON_LATTICE_HPP
#define RICHARDSON_LATTICE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace richardson {

/// Largest supported lattice dimension. Coordinates are stored inline.
inline constexpr int kMaxDim = 8;

/// Stop radii and coordinates must stay below this bound (in L-inf norm).
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 30;

using Coord = std::int32_t;

/// A point of Z^d.
class Site {
 public:
  Site() = default;
  explicit Site(int dim);
  Site(std::initializer_list<Coord> coords);
  explicit Site(const std::vector<Coord>& coords);

  int dim() const { return dim_; }
  Coord operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Coord& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  std::vector<Coord> coords() const;
  std::string to_string() const;  // "(x1,x2,...)"

  friend bool operator==(const Site& a, const Site& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }
  /// Lexicographic by coordinates (dimension first).
  friend auto operator<=>(const Site& a, const Site& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

 private:
  std::int8_t dim_ = 0;
  std::array<Coord, kMaxDim> c_{};
};

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept;
};

/// Finite set of sites, ordered so that every enumeration is deterministic.
using SiteSet = std::set<Site>;

/// Axis-aligned box [lo, hi] (inclusive on both ends).
struct Box {
  Site lo;
  Site hi;

  int dim() const { return lo.dim(); }
  friend bool operator==(const Box&, const Box&) = default;
};

void check_dimension(int dim);

/// δ(x, y) = sum_i |x_i - y_i|.
std::int64_t l1_distance(const Site& x, const Site& y);

/// max_i |x_i|.
std::int64_t linf_norm(const Site& x);

/// Number of nearest neighbours, 2d.
inline int neighbor_count(int dim) { return 2 * dim; }

/// Neighbour in direction `dir` in [0, 2d). Directions are numbered in
/// lexicographic order of their offset vectors: dir < d steps -1 along axis
/// dir, dir >= d steps +1 along axis 2d-1-dir.
Site neighbor(const Site& x, int dir);

/// Index of the direction taking `from` to `to`; throws if not adjacent.
int direction_of(const Site& from, const Site& to);

/// The 2d nearest neighbours of x, ordered lexicographically by offset.
std::vector<Site> neighbors(const Site& x);

/// Sites of eta with at least one nearest neighbour outside eta.
SiteSet inner_boundary(const SiteSet& eta);

/// eta minus its inner boundary.
SiteSet interior(const SiteSet& eta);

Box bounding_box(const SiteSet& eta);
Box enlarge(const Box& box, std::int64_t k);
bool box_contains(const Box& box, const Site& x);
std::uint64_t box_volume(const Box& box);
SiteSet box_sites(const Box& box);

/// Iterates the lattice points of `box` in lexicographic order.
void for_each_in_box(const Box& box, const std::function<void(const Site&)>& fn);

int common_dimension(std::initializer_list<const SiteSet*> sets);

bool disjoint(const SiteSet& a, const SiteSet& b);
SiteSet set_union(const SiteSet& a, const SiteSet& b);
SiteSet set_difference(const SiteSet& a, const SiteSet& b);
SiteSet set_intersection(const SiteSet& a, const SiteSet& b);
bool is_subset(const SiteSet& a, const SiteSet& b);

}  // namespace richardson

#endif  // RICHARDSON_LATTICE_HPP
