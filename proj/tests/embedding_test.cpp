#include <doctest.h>

#include "normforge/catalog.hpp"
#include "normforge/embedding.hpp"
#include "normforge/generators.hpp"

using namespace normforge;

namespace {

std::shared_ptr<const EmbeddingFrame> make_frame(const PolytopeBall& b, Index depth) {
  return std::make_shared<const EmbeddingFrame>(BasisSpace::polytope(b, {"monotone", "normalized"}), depth);
}

RatVec pad(const RatVec& f, Index n) {
  RatVec out = zeros(n);
  out.head(f.size()) = f;
  return out;
}

// Least l whose one-dimensional ball [-r, r] has 1/r in [7/8, 15/16].
std::size_t first_line_level() {
  for (std::size_t l = 1;; ++l) {
    Rat r = abs(rational_norm(1, l).generators()[0](0));
    if (Rat(7, 8) <= 1 / r && 1 / r <= Rat(15, 16)) return l;
  }
}

}  // namespace

TEST_CASE("layout and sandwich constants") {
  using P = std::pair<std::int64_t, std::int64_t>;
  CHECK(frame_layout(2, 3) == std::vector<P>{{1, 1}, {1, 2}, {2, 1}});
  CHECK(frame_layout(1, 3) == std::vector<P>{{1, 1}, {2, 1}, {3, 1}});
  CHECK(sandwich_lower(1) == Rat(7, 8));
  CHECK(sandwich_upper(1) == Rat(15, 16));
  CHECK(sandwich_lower(3) == Rat(127, 128));
}

TEST_CASE("first level on the line is the least admissible catalog entry") {
  LevelBall l = find_ld(BasisSpace::polytope(cube(1), {"monotone"}), 1);
  REQUIRE(l.catalog_index);
  CHECK(*l.catalog_index == first_line_level());
  CHECK(*l.catalog_index == 172);
  Rat r = abs(rational_norm(1, *l.catalog_index).generators()[0](0));
  CHECK(l.norm(make_vec({Rat(3)})) == 3 / r);
}

TEST_CASE("level balls satisfy the sandwich at generators and random points") {
  Rng rng(40);
  for (const PolytopeBall& b : {cube(1), cross_polytope(2), cube(2), random_monotone_ball(rng, 2)}) {
    auto frame = make_frame(b, 4);
    for (Index d = 1; d <= 4; ++d) {
      const LevelBall& l = frame->level(d);
      const Rat lo = sandwich_lower(d), hi = sandwich_upper(d);
      auto gens = l.generators();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Rat l2 = frame->l2x_square(pad(gens[k], 4));
        CHECK(lo * lo * l2 <= 1);
        CHECK(1 <= hi * hi * l2);
        if (d <= 2) CHECK(frame->f_norm(pad(gens[k], 4)) <= 1);
      }
      for (int i = 0; i < 10; ++i) {
        RatVec f = rng.nonzero_vector(d);
        Rat n = l.norm(f), l2 = frame->l2x_square(pad(f, 4));
        CHECK(lo * lo * l2 <= n * n);
        CHECK(n * n <= hi * hi * l2);
      }
    }
  }
}

TEST_CASE("the norm of F sits between 7/8 of l2(X) and l2(X)") {
  Rng rng(41);
  auto frame = make_frame(cross_polytope(2), 4);
  for (int i = 0; i < 30; ++i) {
    RatVec f = rng.nonzero_vector(4);
    Rat n = frame->f_norm(f), l2 = frame->l2x_square(f);
    CHECK(Rat(49, 64) * l2 <= n * n);
    CHECK(n * n <= l2);
  }
  auto line = make_frame(cube(1), 3);
  CHECK(line->l2x_square(make_vec({Rat(1), Rat(1), Rat(0)})) == 2);
  CHECK(line->f_norm(zeros(3)) == 0);
  CHECK(line->f_norm(make_vec({Rat(5, 2), Rat(0), Rat(0)})) <= Rat(5, 2));
  // The hull of the union is strictly larger than a single level somewhere.
  bool strict = false;
  for (Index d = 1; d <= 3 && !strict; ++d) {
    for (const auto& g : line->level(d).generators()) {
      if (line->f_norm(pad(g, 3)) < 1) strict = true;
    }
  }
  CHECK(strict);
}

TEST_CASE("operators T and U") {
  Rng rng(42);
  for (const PolytopeBall& b : {cube(1), cross_polytope(2), cube(2)}) {
    auto frame = make_frame(b, 4);
    for (int i = 0; i < 10; ++i) {
      RatVec f = rng.nonzero_vector(4);
      ScaledVec t = frame->operator_t(f);
      Rat tx = b.gauge(t.v), n = frame->f_norm(f);
      CHECK(t.radicand * tx * tx <= n * n);
      RatVec x = rng.nonzero_vector(b.dim());
      CHECK(equal(frame->tu(x), x));
      ScaledVec u = frame->operator_u(x);
      CHECK(u.radicand == Rat(3, 4));
      Rat F = frame->f_norm(u.v), g = b.gauge(x), T = frame->u_tail_square(x);
      CHECK(sign_linear_surd(Rat(3, 4) * F * F + g * g - T, -F * g, Rat(3)) <= 0);
      CHECK(T > 0);
    }
  }
}

TEST_CASE("projections gain a fixed fraction of the tail") {
  Rng rng(43);
  auto frame = make_frame(cross_polytope(2), 4);
  for (int i = 0; i < 20; ++i) {
    RatVec f = rng.nonzero_vector(4);
    for (Index n = 1; n < 4; ++n) CHECK(furthlemma_slack(*frame, f, n) >= 0);
    RatVec p = f;
    for (Index j = 2; j < 4; ++j) p(j) = 0;
    CHECK(furthlemma_slack(*frame, p, 2) == 0);
  }
}

TEST_CASE("frames reject bad input") {
  CHECK_THROWS(make_frame(cube(1), 0));
  auto frame = make_frame(cube(1), 2);
  CHECK_THROWS_AS(frame->f_norm(zeros(3)), DimensionMismatch);
  PolytopeBall skew({make_vec({Rat(2), Rat(1)}), make_vec({Rat(0), Rat(1)})});
  CHECK_THROWS(EmbeddingFrame(BasisSpace::polytope(skew, {"monotone"}), 2));
}
