#include <doctest.h>

#include "normforge/generators.hpp"
#include "normforge/json_io.hpp"
#include "normforge/suites.hpp"

using namespace normforge;

TEST_CASE("rationals and vectors round-trip as strings") {
  CHECK(to_json(Rat(-3, 4)) == "-3/4");
  CHECK(to_json(Rat(5)) == "5");
  CHECK(rat_from_json(Json("6/8")) == Rat(3, 4));
  CHECK(rat_from_json(Json(7)) == 7);
  CHECK_THROWS(rat_from_json(Json(0.5)));
  CHECK_THROWS(rat_from_json(Json("1/0")));
  RatVec v = make_vec({Rat(1, 3), Rat(0), Rat(-2)});
  CHECK(equal(vec_from_json(to_json(v)), v));
  CHECK_THROWS(vec_from_json(Json::object()));
}

TEST_CASE("balls, spaces and norms round-trip") {
  Rng rng(50);
  PolytopeBall b = random_monotone_ball(rng, 3);
  CHECK(ball_from_json(to_json(b)) == b);
  Json bad = to_json(b);
  bad["dim"] = 5;
  CHECK_THROWS_AS(ball_from_json(bad), DimensionMismatch);

  BasisSpace s = BasisSpace::polytope(b, {"monotone"});
  BasisSpace back = space_from_json(to_json(s));
  CHECK(back.tags == s.tags);
  RatVec x = rng.vector(3);
  CHECK(eval_norm(back, x).square() == eval_norm(s, x).square());

  Json skew = {{"norm", {{"type", "polytope"}, {"ball", {{"generators", {{"2", "1"}, {"0", "1"}}}}}}},
               {"tags", {"monotone"}}};
  CHECK_THROWS(space_from_json(skew));
  CHECK_THROWS(norm_from_json({{"type", "nosuch"}}));

  std::vector<L2SumNorm::Block> blocks;
  blocks.push_back({std::make_shared<PolytopeNorm>(cube(1)), {0}});
  blocks.push_back({std::make_shared<PolytopeNorm>(cross_polytope(2)), {1, 2}});
  L2SumNorm sum(3, blocks);
  NormPtr n = norm_from_json(norm_to_json(sum));
  CHECK(n->kind() == "l2sum");
  CHECK(n->eval(x, Rat(1, 1000)).square() == sum.eval(x, Rat(1, 1000)).square());
}

TEST_CASE("trees, frames and specs round-trip") {
  Rng rng(51);
  FiniteTree t = random_tree(rng, 8, 3, {Rat(1, 8), Rat(1, 16), Rat(1, 32)});
  FiniteTree u = tree_from_json(to_json(t));
  CHECK(u.nodes() == t.nodes());
  CHECK(u.constants() == t.constants());
  RatVec x = rng.vector(t.size());
  CHECK(b_norm(u, x).value.square() == b_norm(t, x).value.square());
  NormPtr tn = norm_from_json(norm_to_json(TreeNorm(t, TreeNormKind::E)));
  CHECK(tn->eval(x, Rat(1, 1000)).square() == e_norm(t, x).value.square());

  EmbeddingFrame f(BasisSpace::polytope(cross_polytope(2), {"monotone"}), 3);
  Json fj = to_json(f);
  CHECK(fj.at("levels").size() == 3);
  auto g = frame_from_json(fj);
  RatVec y = rng.vector(3);
  CHECK(g->f_norm(y) == f.f_norm(y));

  auto spec = std::make_shared<const InterpolationSpec>(InterpolationSpec::polytope(cube(2), cross_polytope(2)));
  auto again = spec_from_json(to_json(*spec));
  RatVec z = rng.nonzero_vector(2);
  CHECK(again->level_norm(3, z) == spec->level_norm(3, z));
  CHECK_THROWS(spec_from_json({{"type", "nosuch"}}));
}

TEST_CASE("inline JSON arguments") {
  CHECK(read_json_arg("[\"1\", \"2\"]").size() == 2);
  CHECK_THROWS(read_json_arg("{not json"));
  CHECK_THROWS(read_json_arg("/nonexistent/file.json"));
}

TEST_CASE("suite names and aliases") {
  CHECK(suite_names().size() == 13);
  CHECK(canonical_suite("rho") == "rho-properties");
  CHECK(canonical_suite("renorm:furthII") == "furthII");
  CHECK(canonical_suite("embedding") == "embedding-sandwich");
  CHECK_THROWS(canonical_suite("nosuch"));
  CHECK(default_samples("rho") == 1000);
}

TEST_CASE("reports are deterministic and replayable") {
  SuiteConfig c;
  c.samples = 40;
  SuiteReport a = run_suite("rho", c);
  SuiteReport b = run_suite("rho-properties", c);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.passed());
  CHECK(a.to_json().at("summary").at("fail") == 0);
  CHECK_FALSE(a.to_json().contains("seconds"));

  const CheckRecord& r = a.records.at(7);
  Json artifact = {{"artifact", r.check}, {"suite", a.suite}, {"seed", a.seed}, {"samples", a.samples}, {"digest", r.inputs}};
  SuiteReport again = replay(artifact);
  REQUIRE(again.records.size() == 1);
  CHECK(again.records[0].inputs == r.inputs);
  CHECK(again.records[0].value == r.value);
  artifact["digest"] = "0000000000000000";
  CHECK_THROWS(replay(artifact));
  CHECK_THROWS(replay(Json::object()));

  SuiteReport failing;
  failing.records.push_back({"x", "0", Verdict::Undecided, ""});
  CHECK_FALSE(failing.passed());
}

TEST_CASE("suites run on a custom space") {
  SuiteConfig c;
  c.samples = 8;
  c.max_dim = 3;
  c.space = cross_polytope(2);
  SuiteReport r = run_suite("furthI", c);
  CHECK(r.passed());
  CHECK(r.count(Verdict::Pass) == 16);
}
