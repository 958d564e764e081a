#include <doctest.h>

#include <cmath>
#include <set>

#include "richardson/randomness.hpp"

using namespace richardson;

TEST_CASE("streams are deterministic in (seed, edge)") {
  const DirectedEdge e(Site{0, 0}, Site{1, 0});
  Realization a(42), b(42);
  EdgeStream sa = a.edge_stream(e);
  EdgeStream sb = b.edge_stream(e);
  Time prev = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Occurrence oa = sa.next();
    const Occurrence ob = sb.next();
    CHECK(oa.time == ob.time);
    CHECK(oa.mark == ob.mark);
    CHECK(oa.time > prev);
    CHECK(oa.mark >= 0.0);
    CHECK(oa.mark < 1.0);
    prev = oa.time;
  }
}

TEST_CASE("reverse edges and other seeds give different streams") {
  Realization r(9);
  const DirectedEdge xy(Site{0, 0}, Site{0, 1});
  const DirectedEdge yx(Site{0, 1}, Site{0, 0});
  CHECK(r.occurrence(xy, 0).time != r.occurrence(yx, 0).time);
  CHECK(edge_stream_key(9, xy) != edge_stream_key(9, yx));
  Realization other(10);
  CHECK(other.occurrence(xy, 0).time != r.occurrence(xy, 0).time);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("first interarrivals are Exp(1)") {
  Realization r(123);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const DirectedEdge e = DirectedEdge::along(Site{i, -i}, i % 4);
    sum += r.occurrence(e, 0).time;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 1.0) <= 3.0 / std::sqrt(n));
}

TEST_CASE("next_occurrence") {
  Realization r(5);
  const DirectedEdge e(Site{2, 2}, Site{2, 3});
  CHECK(r.next_occurrence(e, 0.0).time == r.occurrence(e, 0).time);
  for (double t : {0.0, 0.3, 1.7, 10.0, 55.5}) {
    const Occurrence o = r.next_occurrence(e, t);
    CHECK(o.time > t);
    CHECK(r.next_occurrence(e, t).time == o.time);
  }
  // Querying exactly at an occurrence returns the following one.
  const Time t0 = r.occurrence(e, 3).time;
  CHECK(r.next_occurrence(e, t0).time == r.occurrence(e, 4).time);
  CHECK_THROWS(r.next_occurrence(e, -1.0));
}

TEST_CASE("next_accepted thins the stream") {
  Realization r(77);
  const DirectedEdge e(Site{0, 0}, Site{-1, 0});
  CHECK(r.next_accepted(e, 0.0, 0.0) == kNever);
  for (double t : {0.0, 2.0, 7.5}) CHECK(r.next_accepted(e, t, 1.0) == r.next_occurrence(e, t).time);
  CHECK_THROWS(r.next_accepted(e, 0.0, 1.5));
  CHECK_THROWS(r.next_accepted(e, 0.0, -0.1));

  // The accepted time is the first occurrence after `after` with mark < lambda.
  const Time t = r.next_accepted(e, 1.0, 0.3);
  for (std::size_t k = 0;; ++k) {
    const Occurrence& o = r.occurrence(e, k);
    if (o.time <= 1.0) continue;
    if (o.mark < 0.3) {
      CHECK(o.time == t);
      break;
    }
  }
}

TEST_CASE("accepted fraction and thinned interarrival mean") {
  Realization r(2024);
  const DirectedEdge e(Site{0, 0}, Site{1, 0});
  const int n = 100000;
  int accepted = 0;
  for (int k = 0; k < n; ++k) accepted += r.occurrence(e, static_cast<std::size_t>(k)).mark < 0.5;
  const double frac = static_cast<double>(accepted) / n;
  CHECK(std::abs(frac - 0.5) <= 3.0 * std::sqrt(0.25 / n));

  Realization r2(31337);
  const DirectedEdge f(Site{3, 1}, Site{3, 0});
  double t = 0.0, sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Time next = r2.next_accepted(f, t, 0.25);
    sum += next - t;
    t = next;
  }
  CHECK(std::abs(sum / n - 4.0) <= 3.0 * 4.0 / std::sqrt(n));
}

TEST_CASE("cache eviction never changes values") {
  Realization r(8);
  const DirectedEdge e(Site{1, 1}, Site{1, 2});
  const Occurrence before = r.occurrence(e, 5);
  r.release(e);
  CHECK(r.cached_edges() == 0);
  CHECK(r.occurrence(e, 5).time == before.time);

  Realization shared(8);
  shared.attach();
  shared.attach();
  shared.occurrence(e, 0);
  shared.release(e);
  CHECK(shared.cached_edges() == 1);
  shared.release(e);
  CHECK(shared.cached_edges() == 0);
}

TEST_CASE("query order does not affect streams") {
  std::vector<DirectedEdge> edges;
  for (int i = 0; i < 20; ++i) edges.push_back(DirectedEdge::along(Site{i, 2 * i}, i % 4));
  Realization fwd(99), rev(99);
  std::vector<Time> a, b(edges.size());
  for (const auto& e : edges) a.push_back(fwd.next_accepted(e, 0.5, 0.6));
  for (std::size_t i = edges.size(); i-- > 0;) b[i] = rev.next_accepted(edges[i], 0.5, 0.6);
  CHECK(a == b);
}
