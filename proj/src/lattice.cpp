#include "richardson/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace richardson {

void check_dimension(int dim) {
  if (dim < 2 || dim > kMaxDim) {
    throw std::invalid_argument("dimension must be in [2, " + std::to_string(kMaxDim) +
                                "], got " + std::to_string(dim));
  }
}

Site::Site(int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported site dimension");
  dim_ = static_cast<std::int8_t>(dim);
}

Site::Site(std::initializer_list<Coord> coords) : Site(std::vector<Coord>(coords)) {}

Site::Site(const std::vector<Coord>& coords) : Site(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

std::vector<Coord> Site::coords() const {
  return {c_.begin(), c_.begin() + dim_};
}

std::string Site::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) {
    if (i) os << ',';
    os << c_[static_cast<std::size_t>(i)];
  }
  os << ')';
  return os.str();
}

std::size_t SiteHash::operator()(const Site& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    h ^= static_cast<std::uint32_t>(s[i]);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 32;
  }
  return static_cast<std::size_t>(h);
}

namespace {

void require_same_dim(const Site& x, const Site& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch between sites");
}

}  // namespace

std::int64_t l1_distance(const Site& x, const Site& y) {
  require_same_dim(x, y);
  std::int64_t d = 0;
  for (int i = 0; i < x.dim(); ++i) d += std::llabs(std::int64_t{x[i]} - y[i]);
  return d;
}

std::int64_t linf_norm(const Site& x) {
  std::int64_t m = 0;
  for (int i = 0; i < x.dim(); ++i) m = std::max<std::int64_t>(m, std::llabs(x[i]));
  return m;
}

Site neighbor(const Site& x, int dir) {
  const int d = x.dim();
  Site y = x;
  if (dir < d) {
    y[dir] -= 1;
  } else {
    y[2 * d - 1 - dir] += 1;
  }
  return y;
}

int direction_of(const Site& from, const Site& to) {
  require_same_dim(from, to);
  if (l1_distance(from, to) != 1) throw std::invalid_argument("sites are not nearest neighbours");
  const int d = from.dim();
  for (int i = 0; i < d; ++i) {
    if (to[i] < from[i]) return i;
    if (to[i] > from[i]) return 2 * d - 1 - i;
  }
  return -1;  // unreachable
}

std::vector<Site> neighbors(const Site& x) {
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(neighbor_count(x.dim())));
  for (int dir = 0; dir < neighbor_count(x.dim()); ++dir) out.push_back(neighbor(x, dir));
  return out;
}

SiteSet inner_boundary(const SiteSet& eta) {
  SiteSet out;
  for (const Site& x : eta) {
    for (int dir = 0; dir < neighbor_count(x.dim()); ++dir) {
      if (!eta.contains(neighbor(x, dir))) {
        out.insert(out.end(), x);
        break;
      }
    }
  }
  return out;
}

SiteSet interior(const SiteSet& eta) { return set_difference(eta, inner_boundary(eta)); }

Box bounding_box(const SiteSet& eta) {
  if (eta.empty()) throw std::invalid_argument("bounding box of an empty set");
  Box b{*eta.begin(), *eta.begin()};
  for (const Site& x : eta) {
    require_same_dim(x, b.lo);
    for (int i = 0; i < x.dim(); ++i) {
      b.lo[i] = std::min(b.lo[i], x[i]);
      b.hi[i] = std::max(b.hi[i], x[i]);
    }
  }
  return b;
}

Box enlarge(const Box& box, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("enlargement must be nonnegative");
  Box b = box;
  for (int i = 0; i < box.dim(); ++i) {
    const std::int64_t lo = std::int64_t{box.lo[i]} - k;
    const std::int64_t hi = std::int64_t{box.hi[i]} + k;
    if (lo <= -kMaxCoordinate || hi >= kMaxCoordinate) {
      throw std::out_of_range("enlarged box exceeds the coordinate range");
    }
    b.lo[i] = static_cast<Coord>(lo);
    b.hi[i] = static_cast<Coord>(hi);
  }
  return b;
}

bool box_contains(const Box& box, const Site& x) {
  if (x.dim() != box.dim()) return false;
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i] < box.lo[i] || x[i] > box.hi[i]) return false;
  }
  return true;
}

std::uint64_t box_volume(const Box& box) {
  std::uint64_t v = 1;
  for (int i = 0; i < box.dim(); ++i) {
    v *= static_cast<std::uint64_t>(std::int64_t{box.hi[i]} - box.lo[i] + 1);
  }
  return v;
}

void for_each_in_box(const Box& box, const std::function<void(const Site&)>& fn) {
  const int d = box.dim();
  Site x = box.lo;
  while (true) {
    fn(x);
    int i = d - 1;
    while (i >= 0 && x[i] == box.hi[i]) {
      x[i] = box.lo[i];
      --i;
    }
    if (i < 0) return;
    ++x[i];
  }
}

SiteSet box_sites(const Box& box) {
  SiteSet out;
  for_each_in_box(box, [&](const Site& x) { out.insert(out.end(), x); });
  return out;
}

int common_dimension(std::initializer_list<const SiteSet*> sets) {
  int dim = 0;
  for (const SiteSet* s : sets) {
    for (const Site& x : *s) {
      if (dim == 0) dim = x.dim();
      if (x.dim() != dim) throw std::invalid_argument("sites of differing dimension");
    }
  }
  return dim;
}

bool disjoint(const SiteSet& a, const SiteSet& b) {
  const SiteSet& small = a.size() < b.size() ? a : b;
  const SiteSet& large = a.size() < b.size() ? b : a;
  return std::none_of(small.begin(), small.end(), [&](const Site& x) { return large.contains(x); });
}

SiteSet set_union(const SiteSet& a, const SiteSet& b) {
  SiteSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

SiteSet set_difference(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

SiteSet set_intersection(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const SiteSet& a, const SiteSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace richardson
