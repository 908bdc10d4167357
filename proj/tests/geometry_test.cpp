#include <doctest.h>

#include "normforge/euclid_hull.hpp"
#include "normforge/lp.hpp"
#include "normforge/polytope.hpp"
#include "normforge/random.hpp"

#include <algorithm>
#include <cmath>

using namespace normforge;

namespace {

RatVec v2(Rat a, Rat b) { return make_vec({a, b}); }
RatVec v3(Rat a, Rat b, Rat c) { return make_vec({a, b, c}); }

// Independent planar oracle: convex hull by Andrew's monotone chain over the
// symmetric point set, then the gauge is the largest edge functional.
Rat planar_gauge(const std::vector<RatVec>& gens, const RatVec& x) {
  std::vector<std::pair<Rat, Rat>> pts;
  for (const auto& g : gens) {
    pts.emplace_back(g(0), g(1));
    pts.emplace_back(-g(0), -g(1));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<Rat, Rat>> hull;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t start = hull.size();
    for (const auto& p : pts) {
      while (hull.size() >= start + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  Rat best;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    Rat det = p.first * q.second - q.first * p.second;
    Rat nx = (q.second - p.second) / det;
    Rat ny = (p.first - q.first) / det;
    best = std::max(best, nx * x(0) + ny * x(1));
  }
  return best;
}

PolytopeBall random_ball(Rng& rng, Index d, int count) {
  for (;;) {
    std::vector<RatVec> g;
    for (int i = 0; i < count; ++i) g.push_back(rng.nonzero_vector(d, 5, 4));
    try {
      return PolytopeBall(g);
    } catch (const Error&) {
    }
  }
}

Rat support(const PolytopeBall& b, const RatVec& u) {
  Rat best;
  for (const auto& g : b.generators()) best = std::max(best, abs(g.dot(u)));
  return best;
}

}  // namespace

TEST_CASE("dense simplex solves small programs exactly") {
  // min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
  RatMat a(2, 4);
  a << 1, 2, 1, 0, 3, 1, 0, 1;
  RatVec b = make_vec({4, 6});
  RatVec c = make_vec({-1, -1, 0, 0});
  auto r = minimize(a, b, c);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(-14) / 5);
  CHECK(r.x(0) == Rat(8) / 5);
  CHECK(r.x(1) == Rat(6) / 5);

  RatMat inf(1, 2);
  inf << 1, 1;
  CHECK(minimize(inf, make_vec({-1}), make_vec({0, 0})).status == LpStatus::Infeasible);
  CHECK(minimize(inf, make_vec({1}), make_vec({0, -1})).status == LpStatus::Optimal);
  RatMat unb(1, 2);
  unb << 1, -1;
  CHECK(minimize(unb, make_vec({1}), make_vec({0, -1})).status == LpStatus::Unbounded);
}

TEST_CASE("gauge of the square and of a skewed parallelogram") {
  PolytopeBall square({v2(1, 0), v2(0, 1), v2(1, 1), v2(1, -1)});
  CHECK(square.generators().size() == 2);
  CHECK(square.gauge(v2(2, 1)) == 2);
  CHECK(square.gauge(v2(0, 0)) == 0);
  CHECK(square.contains(v2(1, 1)));
  CHECK_FALSE(square.contains(v2(1, Rat(1) + Rat(1) / 1000000)));

  PolytopeBall skew({v2(2, 1), v2(0, 1)});
  CHECK(skew.gauge(v2(2, 0)) == 2);
  CHECK_FALSE(skew.contains(v2(2, 0)));
  CHECK(skew.contains(v2(1, 0)));
}

TEST_CASE("degenerate and mismatched inputs are rejected") {
  CHECK_THROWS_AS(PolytopeBall({v2(1, 1), v2(2, 2)}), Error);
  PolytopeBall square = cube(2);
  CHECK_THROWS_AS(square.gauge(v3(1, 2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(square.section(3), Error);
}

TEST_CASE("planar gauges agree with the monotone chain oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    PolytopeBall b = random_ball(rng, 2, 2 + trial % 5);
    for (int i = 0; i < 5; ++i) {
      RatVec x = rng.vector(2);
      CHECK(b.gauge(x) == planar_gauge(b.generators(), x));
    }
  }
}

TEST_CASE("gauge is sublinear and absolutely homogeneous") {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    Index d = 2 + trial % 3;
    PolytopeBall b = random_ball(rng, d, int(d) + 2);
    RatVec x = rng.vector(d);
    RatVec y = rng.vector(d);
    Rat c = rng.rational(7, 5);
    CHECK(b.gauge(x + y) <= b.gauge(x) + b.gauge(y));
    CHECK(b.gauge(c * x) == abs(c) * b.gauge(x));
    CHECK(b.contains(x) == (b.gauge(x) <= 1));
  }
}

TEST_CASE("canonical form is independent of presentation") {
  PolytopeBall a({v2(1, 0), v2(0, 1)});
  PolytopeBall b({v2(0, -1), v2(-1, 0), v2(Rat(1) / 2, Rat(1) / 2)});
  CHECK(a == b);
}

TEST_CASE("minkowski sums") {
  PolytopeBall square = cube(2);
  PolytopeBall diamond = cross_polytope(2);
  PolytopeBall twice = minkowski_sum(square, square, 1, 1);
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    RatVec x = rng.vector(2);
    CHECK(twice.gauge(x) == std::max(abs(x(0)), abs(x(1))) / 2);
  }
  CHECK(minkowski_sum(square, diamond, 1, 0) == square);
  CHECK(minkowski_sum(square, diamond, 1, 1).gauge(v2(2, 0)) == 1);

  for (int trial = 0; trial < 20; ++trial) {
    PolytopeBall a = random_ball(rng, 2 + trial % 2, 4);
    PolytopeBall b = random_ball(rng, a.dim(), 3);
    Rat s = rng.nonnegative(4, 3) + Rat(1) / 7;
    Rat t = rng.nonnegative(4, 3);
    PolytopeBall sum = minkowski_sum(a, b, s, t);
    for (const auto& u : sum.generators()) CHECK(support(sum, u) == s * support(a, u) + t * support(b, u));
    for (const auto& u : a.generators()) CHECK(support(sum, u) == s * support(a, u) + t * support(b, u));
  }
}

TEST_CASE("sections") {
  PolytopeBall square = cube(2);
  CHECK(square.section(1).gauge(make_vec({3})) == 3);
  PolytopeBall skew({v2(2, 1), v2(0, 1)});
  CHECK(skew.section(1).gauge(make_vec({1})) == 1);
  CHECK(skew.section(2) == skew);

  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    Index d = 2 + trial % 3;
    PolytopeBall b = random_ball(rng, d, int(d) + 2);
    Index k = 1 + trial % d;
    PolytopeBall s = b.section(k);
    for (int i = 0; i < 4; ++i) {
      RatVec x = zeros(d);
      x.head(k) = rng.vector(k);
      CHECK(s.gauge(x.head(k)) == b.gauge(x));
    }
  }
}

TEST_CASE("euclidean hull gauge") {
  std::vector<RatVec> cube3 = cube(3).generators();
  EuclidHull body(cube3, 2);
  auto at = [&](Rat a, Rat b, Rat c) { return body.gauge_interval(v3(a, b, c), Rat(1) / 1000000000); };
  CHECK(at(1, 1, 1).contains(Rat(1)));
  CHECK(at(0, 0, 0).lo == 0);
  CHECK(at(0, 0, 0).hi == 0);
  CertInterval r = at(2, 0, 0);
  CHECK(r.width() <= Rat(1) / 1000000000);
  CHECK(r.lo * r.lo <= 2);
  CHECK(r.hi * r.hi >= 2);

  // Generators of the body evaluate to 1.
  Rat eps = Rat(1) / 1000;
  for (const auto& v : cube3) CHECK(body.gauge_interval(v, eps).contains(Rat(1)));
  CHECK(body.gauge_interval(make_vec({Rat(7, 5), Rat(1, 5), 0}), eps).contains(Rat(1)));

  // Nesting under refinement.
  Rng rng(15);
  for (int i = 0; i < 20; ++i) {
    RatVec x = rng.vector(3);
    CertInterval coarse = body.gauge_interval(x, Rat(1) / 100);
    CertInterval fine = body.gauge_interval(x, Rat(1) / 10000);
    CHECK(coarse.overlaps(fine));
  }
}

TEST_CASE("euclidean hull gauge matches a sampled dual bound") {
  // gauge(x) = max over y of y . x / max(|y|_1, sqrt(2) |y|_2).
  EuclidHull body(cube(3).generators(), 2);
  Rng rng(16);
  const int n = 20000;
  std::vector<std::array<double, 3>> dirs;
  for (int i = 0; i < n; ++i) {
    double z = 1 - 2 * (i + 0.5) / n;
    double r = std::sqrt(1 - z * z);
    double phi = i * 2.399963229728653;
    dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  for (int trial = 0; trial < 15; ++trial) {
    RatVec x = rng.vector(3);
    double xd[3] = {x(0).convert_to<double>(), x(1).convert_to<double>(), x(2).convert_to<double>()};
    double best = 0;
    for (const auto& y : dirs) {
      double h = std::max(std::fabs(y[0]) + std::fabs(y[1]) + std::fabs(y[2]), std::sqrt(2.0));
      best = std::max(best, (y[0] * xd[0] + y[1] * xd[1] + y[2] * xd[2]) / h);
    }
    CertInterval g = body.gauge_interval(x, Rat(1) / 1000000);
    CHECK(g.hi.convert_to<double>() >= best - 1e-9);
    CHECK(g.lo.convert_to<double>() <= best * 1.01 + 1e-9);
  }
}
