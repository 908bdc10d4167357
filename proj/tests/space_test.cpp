#include <doctest.h>

#include "normforge/catalog.hpp"
#include "normforge/generators.hpp"
#include "normforge/normed_space.hpp"

#include <algorithm>
#include <set>

using namespace normforge;

namespace {

RatVec v2(Rat a, Rat b) { return make_vec({a, b}); }

PolytopeBall skew() { return PolytopeBall({v2(2, 1), v2(0, 1)}); }

// All sequences of positive integers with length + sum = w, in
// lexicographic order.
void sequences_of_weight(int w, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (w == 0) {
    if (!prefix.empty()) out.push_back(prefix);
    return;
  }
  for (int p = 1; p + 1 <= w; ++p) {
    prefix.push_back(p);
    sequences_of_weight(w - p - 1, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> varpi_oracle(std::size_t count) {
  std::vector<std::vector<int>> all;
  for (int w = 2; all.size() < count; ++w) {
    std::vector<std::vector<int>> level;
    std::vector<int> prefix;
    sequences_of_weight(w, prefix, level);
    std::sort(level.begin(), level.end());
    all.insert(all.end(), level.begin(), level.end());
  }
  all.resize(count);
  return all;
}

}  // namespace

TEST_CASE("norm evaluation and coordinates") {
  BasisSpace square = BasisSpace::polytope(cube(2));
  CHECK(*eval_norm(square, v2(2, 1)).value() == 2);
  CHECK(*eval_norm(square, v2(0, 0)).value() == 0);
  RatVec x = make_vec({Rat(3), Rat(5), Rat(7)});
  CHECK(equal(partial_sum(2, x), make_vec({Rat(3), Rat(5), Rat(0)})));
  CHECK(equal(partial_sum(0, x), zeros(3)));
  CHECK(equal(partial_sum(3, x), x));
  CHECK(coordinate_functional(2, x) == 5);
  CHECK(coordinate_functional(1, zeros(3)) == 0);
  for (Index i = 1; i <= 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      RatVec e = zeros(3);
      e(j) = 1;
      CHECK(coordinate_functional(i, e) == (i == j + 1 ? 1 : 0));
    }
  }
}

TEST_CASE("monotone bases") {
  CHECK(is_monotone(cube(2)).monotone);
  CHECK(is_monotone(cross_polytope(2)).monotone);
  MonotoneVerdict v = is_monotone(skew());
  REQUIRE_FALSE(v.monotone);
  REQUIRE(v.witness);
  CHECK(skew().gauge(partial_sum(v.n, *v.witness)) > skew().gauge(*v.witness));
  CHECK(skew().gauge(v2(2, 0)) == 2);
  CHECK(skew().gauge(partial_sum(1, v2(2, 1))) == 2);
  CHECK(skew().gauge(v2(2, 1)) == 1);
}

TEST_CASE("random monotone balls are monotone and normalized") {
  Rng rng(31);
  for (int i = 0; i < 12; ++i) {
    PolytopeBall b = random_monotone_ball(rng, 1 + i % 3);
    CHECK(is_monotone(b).monotone);
    for (Index k = 0; k < b.dim(); ++k) {
      RatVec e = zeros(b.dim());
      e(k) = 1;
      CHECK(b.gauge(e) == 1);
    }
    for (int j = 0; j < 5; ++j) {
      RatVec x = rng.vector(b.dim());
      for (Index n = 0; n <= b.dim(); ++n) CHECK(b.gauge(partial_sum(n, x)) <= b.gauge(x));
    }
  }
}

TEST_CASE("one-equivalence on initial spans") {
  CHECK(one_equivalent(cube(2), cross_polytope(2), 1));
  CHECK_FALSE(one_equivalent(cube(2), cross_polytope(2), 2));
  CHECK(one_equivalent(skew(), skew(), 2));
}

TEST_CASE("l2 sums of blocks") {
  std::vector<L2SumNorm::Block> blocks;
  blocks.push_back({std::make_shared<PolytopeNorm>(cube(2)), {0, 2}});
  blocks.push_back({std::make_shared<PolytopeNorm>(cross_polytope(1)), {1}});
  L2SumNorm n(3, blocks);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    RatVec x = rng.vector(3);
    Rat a = std::max(abs(x(0)), abs(x(2)));
    CHECK(n.eval(x, Rat(1, 1000)).square() == a * a + x(1) * x(1));
  }
}

TEST_CASE("the pairing pi") {
  CHECK(pi(1) == std::make_pair<std::int64_t, std::int64_t>(1, 1));
  CHECK(pi(2) == std::make_pair<std::int64_t, std::int64_t>(1, 2));
  CHECK(pi(3) == std::make_pair<std::int64_t, std::int64_t>(2, 1));
  CHECK(pi(4) == std::make_pair<std::int64_t, std::int64_t>(1, 3));
  CHECK(pi(6) == std::make_pair<std::int64_t, std::int64_t>(3, 1));
  CHECK(pi_inverse(3, 1) == 6);
  for (std::int64_t i = 1; i <= 1000000; i += (i < 1000 ? 1 : 997)) {
    auto [n, k] = pi(i);
    CHECK(pi_inverse(n, k) == i);
  }
}

TEST_CASE("varpi against a brute-force enumeration") {
  const std::size_t count = 10000;
  auto oracle = varpi_oracle(count);
  std::set<std::vector<int>> seen;
  for (std::size_t i = 1; i <= count; ++i) {
    auto eta = varpi(static_cast<std::int64_t>(i));
    REQUIRE(eta == oracle[i - 1]);
    CHECK(varpi_inverse(eta) == static_cast<std::int64_t>(i));
    CHECK(seen.insert(eta).second);
    if (eta.size() > 1) {
      std::vector<int> parent(eta.begin(), eta.end() - 1);
      CHECK(varpi_inverse(parent) < static_cast<std::int64_t>(i));
    }
  }
  auto d = delta({3, 1, 4});
  REQUIRE(d.size() == 3);
  CHECK(d[0] < d[1]);
  CHECK(d[1] < d[2]);
}

TEST_CASE("catalog of rational norms") {
  PolytopeBall first = rational_norm(1, 1);
  CHECK(first == PolytopeBall({make_vec({Rat(1)})}));
  for (std::size_t l = 1; l <= 30; ++l) {
    PolytopeBall b = rational_norm(1, l);
    REQUIRE(b.generators().size() == 1);
    Rat r = abs(b.generators()[0](0));
    CHECK(b.gauge(make_vec({r})) == 1);
  }
  std::vector<PolytopeBall> two;
  std::size_t prev = 0;
  for (std::size_t l = 1; l <= 50; ++l) {
    two.push_back(rational_norm(2, l));
    CHECK(is_monotone(two.back()).monotone);
    CHECK(encoding_size(two.back()) >= prev);
    prev = encoding_size(two.back());
  }
  for (std::size_t a = 0; a < two.size(); ++a) {
    for (std::size_t b = a + 1; b < two.size(); ++b) CHECK_FALSE(two[a] == two[b]);
  }
}

TEST_CASE("catalog spaces extend their parents") {
  CHECK(catalog_ball({1}) == rational_norm(1, 1));
  for (const std::vector<int>& eta : {std::vector<int>{1}, std::vector<int>{2}, std::vector<int>{1, 3}}) {
    PolytopeBall parent = catalog_ball(eta);
    CHECK(is_monotone(parent).monotone);
    for (int j = 1; j <= 4; ++j) {
      std::vector<int> child = eta;
      child.push_back(j);
      PolytopeBall c = catalog_ball(child);
      CHECK(c.dim() == parent.dim() + 1);
      CHECK(is_monotone(c).monotone);
      CHECK(c.section(parent.dim()) == parent);
      CHECK(find_child_index(eta, c, 10) == static_cast<std::size_t>(j));
    }
  }
}
