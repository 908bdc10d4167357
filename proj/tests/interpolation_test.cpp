#include <doctest.h>

#include "normforge/generators.hpp"
#include "normforge/interpolation.hpp"

#include <cmath>

using namespace normforge;

namespace {

// Sixty terms of the series in long double, with the remainder below 4^-60.
long double series_constant() {
  long double s = 0;
  for (int n = 1; n <= 60; ++n) {
    long double d = std::ldexp(1.0L, n) + std::ldexp(1.0L, -n);
    s += 1 / (d * d);
  }
  return std::sqrt(s);
}

long double to_ld(const Rat& r) { return r.convert_to<long double>(); }

PolytopeBall segment(const Rat& r) { return PolytopeBall({make_vec({r})}); }

}  // namespace

TEST_CASE("level norms on the line") {
  auto spec = InterpolationSpec::polytope(segment(Rat(1)), segment(Rat(1)));
  auto half = InterpolationSpec::polytope(segment(Rat(1)), segment(Rat(1, 2)));
  RatVec x = make_vec({Rat(-3, 7)});
  for (int n = 1; n <= 6; ++n) {
    CHECK(spec.level_norm(n, x) == Rat(3, 7) / (pow2(n) + pow2(-n)));
    CHECK(half.level_norm(n, x) == Rat(3, 7) / (pow2(n - 1) + pow2(-n)));
  }
  CHECK_THROWS(spec.level_norm(0, x));
}

TEST_CASE("interpolation norm on the line matches the series constant") {
  auto spec = InterpolationSpec::polytope(segment(Rat(1)), segment(Rat(1)));
  const Rat eps(1, 1000000000000LL);
  InterpValue v = interpolation_norm(spec, make_vec({Rat(1)}), eps);
  CHECK(v.value.width() <= eps);
  long double c = series_constant();
  CHECK(to_ld(v.value.lo) <= c + 1e-15L);
  CHECK(to_ld(v.value.hi) >= c - 1e-15L);
  CHECK(std::fabs(static_cast<double>(c) - 0.485476) < 1e-6);
  CertInterval k = interpolation_constant(eps);
  CHECK(k.overlaps(v.value));
  CHECK(interpolation_norm(spec, make_vec({Rat(0)}), eps).value.hi == 0);
}

TEST_CASE("tail enclosures are nested") {
  Rng rng(4);
  PolytopeBall x = random_monotone_ball(rng, 2);
  auto spec = InterpolationSpec::polytope(x, cross_polytope(2));
  RatVec v = rng.nonzero_vector(2);
  CertInterval prev = interpolation_norm_levels(spec, v, 2, Rat(1, 1000000000)).value;
  for (int n = 3; n <= 10; ++n) {
    CertInterval next = interpolation_norm_levels(spec, v, n, Rat(1, 1000000000)).value;
    CHECK(next.lo >= prev.lo - Rat(1, 1000000000));
    CHECK(next.hi <= prev.hi + Rat(1, 1000000000));
    prev = next;
  }
  CertInterval a = interpolation_norm(spec, v, Rat(1, 1000000)).value;
  CertInterval b = interpolation_norm(spec, RatVec(2 * v), Rat(1, 1000000)).value;
  CHECK((2 * a).overlaps(b));
}

TEST_CASE("level balls sit between scaled balls of X") {
  Rng rng(9);
  PolytopeBall x = random_monotone_ball(rng, 3);
  PolytopeBall w = cross_polytope(3);
  auto spec = InterpolationSpec::polytope(x, w);
  Rat cw;
  for (const auto& g : w.generators()) cw = std::max(cw, x.gauge(g));
  for (int i = 0; i < 10; ++i) {
    RatVec v = rng.nonzero_vector(3);
    for (int n = 1; n <= 4; ++n) {
      Rat l = spec.level_norm(n, v);
      CHECK(l <= pow2(n) * x.gauge(v));
      CHECK(l * (pow2(n) * cw + pow2(-n)) >= x.gauge(v));
    }
  }
}

TEST_CASE("projections of tree-built spaces") {
  Rng rng(17);
  for (int t = 0; t < 2; ++t) {
    FiniteTree tree = random_tree(rng, 5, 3);
    InterpolationSpec spec = build_A(tree);
    CHECK(basis_monotone(spec));
    std::vector<RatVec> vectors;
    for (int i = 0; i < 6; ++i) vectors.push_back(rng.vector(tree.size()));
    for (const auto& leaf : tree.leaves()) {
      InterpProjReport r = verify_interpproj(spec, branch_coords(tree, leaf), vectors, Rat(1, 1000000));
      CHECK(r.ok());
      CHECK(r.scale_law_applies);
      CHECK(r.exact_levels > 0);
    }
  }
}

TEST_CASE("projection preconditions are reported") {
  PolytopeBall skew({make_vec({Rat(1), Rat(1)}), make_vec({Rat(0), Rat(1)})});
  auto spec = InterpolationSpec::polytope(skew, skew);
  InterpProjReport r = verify_interpproj(spec, {0}, {}, Rat(1, 1000));
  CHECK_FALSE(r.contractive_x);
  CHECK_FALSE(r.ok());
}

TEST_CASE("projections that keep the norm are decided") {
  std::map<TreeNode, BasisSpace> branches;
  branches.emplace(TreeNode{"a", "b"}, BasisSpace::polytope(cross_polytope(2), {"monotone"}));
  branches.emplace(TreeNode{"a", "c"}, BasisSpace::polytope(cube(2), {"monotone"}));
  FiniteTree fork({"a", "b", "c"}, {{"a"}, {"a", "b"}, {"a", "c"}}, branches, {Rat(7, 1024), Rat(7, 4096)});
  InterpolationSpec spec = build_A(fork);
  RatVec x = make_vec({Rat(1), Rat(1), Rat(1)});
  auto coords = branch_coords(fork, {"a", "b"});
  for (int n = 1; n <= 5; ++n) CHECK(spec.level_norm(n, x) == spec.level_norm(n, make_vec({Rat(1), Rat(1), Rat(0)})));
  InterpProjReport r = verify_interpproj(spec, coords, {x}, Rat(1, 1000000000));
  CHECK(r.undecided == 0);
  CHECK(r.violations == 0);
  CHECK(r.ok());
}
