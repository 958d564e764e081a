#include "richardson/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace richardson {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

double open_unit(std::uint64_t w) {
  return (static_cast<double>(w >> 11) + 0.5) * kTwoPow53Inv;
}

double half_open_unit(std::uint64_t w) { return static_cast<double>(w >> 11) * kTwoPow53Inv; }

}  // namespace

DirectedEdge::DirectedEdge(const Site& f, const Site& t) : from(f), to(t) {
  if (l1_distance(f, t) != 1) throw std::invalid_argument("edge endpoints must be nearest neighbours");
}

DirectedEdge DirectedEdge::along(const Site& from, int dir) {
  DirectedEdge e;
  e.from = from;
  e.to = neighbor(from, dir);
  return e;
}

std::size_t DirectedEdgeHash::operator()(const DirectedEdge& e) const noexcept {
  const SiteHash h;
  return h(e.from) * 31 + h(e.to);
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed ^ 0x5851f42d4c957f2dULL) + (index + 1) * kGolden);
}

std::uint64_t edge_stream_key(std::uint64_t master_seed, const DirectedEdge& e) {
  std::uint64_t h = mix64(master_seed ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(e.from.dim()));
  for (int i = 0; i < e.from.dim(); ++i) {
    h = mix64(h ^ static_cast<std::uint32_t>(e.from[i]));
  }
  h = mix64(h ^ static_cast<std::uint64_t>(e.direction()));
  return h;
}

std::uint64_t stream_word(std::uint64_t key, std::uint64_t k) { return mix64(key + (k + 1) * kGolden); }

Occurrence EdgeStream::next() { return real_->occurrence(edge_, index_++); }

Realization::Entry& Realization::entry(const DirectedEdge& e) {
  auto [it, inserted] = cache_.try_emplace(e);
  if (inserted) it->second.key = edge_stream_key(seed_, e);
  return it->second;
}

void Realization::extend(Entry& en) {
  const std::uint64_t k = en.prefix.size();
  const Time prev = en.prefix.empty() ? 0.0 : en.prefix.back().time;
  Time t = prev - std::log(open_unit(stream_word(en.key, 2 * k)));
  if (!(t > prev)) t = std::nextafter(prev, kNever);
  en.prefix.push_back({t, half_open_unit(stream_word(en.key, 2 * k + 1))});
}

const Occurrence& Realization::occurrence(const DirectedEdge& e, std::size_t k) {
  Entry& en = entry(e);
  while (en.prefix.size() <= k) extend(en);
  return en.prefix[k];
}

Occurrence Realization::next_occurrence(const DirectedEdge& e, Time after) {
  if (!(after >= 0.0)) throw std::invalid_argument("query time must be nonnegative");
  Entry& en = entry(e);
  while (en.prefix.empty() || en.prefix.back().time <= after) extend(en);
  auto it = std::upper_bound(en.prefix.begin(), en.prefix.end(), after,
                             [](Time t, const Occurrence& o) { return t < o.time; });
  return *it;
}

Time Realization::next_accepted(const DirectedEdge& e, Time after, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0,1]");
  if (!(after >= 0.0)) throw std::invalid_argument("query time must be nonnegative");
  if (lambda == 0.0) return kNever;
  Entry& en = entry(e);
  while (en.prefix.empty() || en.prefix.back().time <= after) extend(en);
  std::size_t k = static_cast<std::size_t>(
      std::upper_bound(en.prefix.begin(), en.prefix.end(), after,
                       [](Time t, const Occurrence& o) { return t < o.time; }) -
      en.prefix.begin());
  while (true) {
    if (k == en.prefix.size()) extend(en);
    if (en.prefix[k].mark < lambda) return en.prefix[k].time;
    ++k;
  }
}

void Realization::release(const DirectedEdge& e) {
  if (attached_ <= 1) {
    cache_.erase(e);
    return;
  }
  Entry& en = entry(e);
  if (++en.releases >= attached_) cache_.erase(e);
}

}  // namespace richardson
