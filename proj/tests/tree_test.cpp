#include <doctest.h>

#include "normforge/catalog.hpp"
#include "normforge/generators.hpp"
#include "normforge/renorming.hpp"
#include "normforge/treespace.hpp"

#include <set>

using namespace normforge;

namespace {

BasisSpace poly(const PolytopeBall& b) { return BasisSpace::polytope(b, {"monotone"}); }

BasisSpace l2(Index d) {
  std::vector<L2SumNorm::Block> blocks;
  for (Index i = 0; i < d; ++i) blocks.push_back({std::make_shared<PolytopeNorm>(cube(1)), {i}});
  return BasisSpace(std::make_shared<L2SumNorm>(d, blocks), {"monotone"});
}

FiniteTree fork(const BasisSpace& b, const BasisSpace& c, std::vector<Rat> constants = {Rat(7, 1024), Rat(7, 4096)}) {
  std::map<TreeNode, BasisSpace> branches;
  branches.emplace(TreeNode{"a", "b"}, b);
  branches.emplace(TreeNode{"a", "c"}, c);
  return FiniteTree({"a", "b", "c"}, {{"a"}, {"a", "b"}, {"a", "c"}}, branches, std::move(constants));
}

RatVec v3(Rat a, Rat b, Rat c) { return make_vec({a, b, c}); }

bool on_chain(const FiniteTree& t, const TreeNode& leaf, Index i) {
  for (Index j : t.chain(leaf)) {
    if (j == i) return true;
  }
  return false;
}

// Squared norms straight from the sup formulas, over polytope branches.
Rat e_square_oracle(const FiniteTree& t, const RatVec& x) {
  Rat best;
  for (const auto& leaf : t.leaves()) {
    const auto& ch = t.chain(leaf);
    RatVec y(static_cast<Index>(ch.size()));
    for (std::size_t k = 0; k < ch.size(); ++k) y(static_cast<Index>(k)) = x(ch[k]);
    Rat g = t.branch(leaf).ball().gauge(y);
    best = std::max(best, g * g);
  }
  return best;
}

Rat b_square_oracle(const FiniteTree& t, const RatVec& x) {
  Rat best;
  for (const auto& leaf : t.leaves()) {
    const auto& ch = t.chain(leaf);
    RatVec y(static_cast<Index>(ch.size()));
    for (std::size_t k = 0; k < ch.size(); ++k) y(static_cast<Index>(k)) = x(ch[k]);
    Rat g = t.branch(leaf).ball().gauge(y);
    Rat s = g * g;
    for (Index i = 0; i < t.size(); ++i) {
      if (on_chain(t, leaf, i)) continue;
      const Rat& c = t.constant(static_cast<Index>(t.nodes()[static_cast<std::size_t>(i)].size()));
      s += c * c * x(i) * x(i);
    }
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

TEST_CASE("E and B norms on a fork with euclidean branches") {
  FiniteTree t = fork(l2(2), l2(2));
  CHECK(e_norm(t, v3(1, 1, 0)).value.square() == 2);
  CHECK(e_norm(t, v3(0, 1, 1)).value.square() == 1);
  TreeValue b = b_norm(t, v3(0, 1, 1));
  CHECK(b.value.square() == 1 + Rat(7, 4096) * Rat(7, 4096));
  CHECK(e_norm(t, zeros(3)).value.square() == 0);
}

TEST_CASE("tree norms match the sup formulas on random trees") {
  Rng rng(13);
  for (int i = 0; i < 6; ++i) {
    FiniteTree t = random_tree(rng, 12, 4, summ_constants(4));
    for (int j = 0; j < 8; ++j) {
      RatVec x = rng.vector(t.size());
      CHECK(e_norm(t, x).value.square() == e_square_oracle(t, x));
      CHECK(b_norm(t, x).value.square() == b_square_oracle(t, x));
    }
  }
}

TEST_CASE("chain vectors carry the branch norm") {
  Rng rng(14);
  FiniteTree t = random_tree(rng, 15, 4, summ_constants(4));
  for (const auto& leaf : t.leaves()) {
    RatVec y = rng.nonzero_vector(static_cast<Index>(t.chain(leaf).size()));
    RatVec x = t.embed_chain(leaf, y);
    CHECK(equal(t.restrict_to_chain(leaf, x), y));
    Rat g = t.branch(leaf).ball().gauge(y);
    CHECK(e_norm(t, x).value.square() == g * g);
    CHECK(b_norm(t, x).value.square() == g * g);
  }
}

TEST_CASE("subtree projections contract") {
  Rng rng(15);
  FiniteTree t = random_tree(rng, 14, 4, summ_constants(4));
  CHECK(is_subtree(t, t.nodes()));
  RatVec x = rng.vector(t.size());
  CHECK(equal(subtree_projection(t, t.nodes(), x), x));
  for (int i = 0; i < 40; ++i) {
    std::set<TreeNode> s;
    TreeNode n = t.nodes()[static_cast<std::size_t>(rng.uniform(0, t.size() - 1))];
    for (std::size_t k = 1; k <= n.size(); ++k) s.insert(TreeNode(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(k)));
    std::vector<TreeNode> sub(s.begin(), s.end());
    REQUIRE(is_subtree(t, sub));
    RatVec y = rng.vector(t.size());
    RatVec p = subtree_projection(t, sub, y);
    for (Index j = 0; j < t.size(); ++j) CHECK((s.count(t.nodes()[static_cast<std::size_t>(j)]) ? p(j) == y(j) : p(j) == 0));
    CHECK(e_norm(t, p).value.square() <= e_norm(t, y).value.square());
    CHECK(b_norm(t, p).value.square() <= b_norm(t, y).value.square());
  }
  CHECK_FALSE(is_subtree(t, {TreeNode{"a", "zz"}}));
}

TEST_CASE("the level-gain inequality") {
  auto c1 = std::vector<Rat>{Rat(1), Rat(1), Rat(1)};
  CHECK(verify_b001(l2(3), c1, {make_vec({Rat(1), Rat(2), Rat(3)})}).ok);
  B001Report r = verify_b001(poly(cube(2)), {Rat(1, 100), Rat(1, 100)}, {make_vec({Rat(1), Rat(1)})});
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
  CHECK(r.level == 2);
  auto frame = std::make_shared<const RenormFrame>(
      std::make_shared<const EmbeddingFrame>(BasisSpace::polytope(cube(1), {"monotone", "normalized"}), 3));
  BasisSpace renorm(std::make_shared<RenormNorm>(frame, RenormKind::I));
  Rng rng(16);
  std::vector<RatVec> vs;
  for (int i = 0; i < 10; ++i) vs.push_back(rng.nonzero_vector(3));
  CHECK(verify_b001(renorm, summ_constants(3), vs).ok);
  CHECK(summ_constants(2) == std::vector<Rat>{Rat(7, 1024), Rat(7, 4096)});
}

TEST_CASE("random branch spaces satisfy the level-gain inequality") {
  Rng rng(17);
  for (int i = 0; i < 8; ++i) {
    PolytopeBall b = random_monotone_ball(rng, 4);
    std::vector<RatVec> vs;
    for (int j = 0; j < 10; ++j) vs.push_back(rng.vector(4));
    B001Report r = verify_b001(poly(b), std::vector<Rat>(4, Rat(1, 7)), vs);
    CHECK(r.ok);
    CHECK(r.decided);
  }
}

TEST_CASE("segments in tree spaces") {
  std::map<TreeNode, BasisSpace> one;
  one.emplace(TreeNode{"a", "b"}, poly(cube(2)));
  FiniteTree chain({"a", "b"}, {{"a"}, {"a", "b"}}, one, {Rat(7, 1024), Rat(7, 4096)});
  auto flat = b_segment_check(chain, make_vec({Rat(1), Rat(1)}), make_vec({Rat(1), Rat(-1)}));
  CHECK(flat.verdict == SegmentVerdict::ConclusionHolds);
  FiniteTree t = fork(poly(cube(2)), poly(cube(2)));
  auto across = b_segment_check(t, v3(0, 1, 0), v3(0, 0, 1));
  CHECK(across.verdict == SegmentVerdict::NotConstant);
  CHECK_THROWS(b_segment_check(t, v3(0, 1, 0), v3(0, 1, 0)));
}

TEST_CASE("the ball generated by the branches") {
  FiniteTree t = fork(poly(cube(2)), poly(cube(2)));
  PolytopeBall phi = phi_ball(t);
  CHECK(phi.gauge(v3(0, 1, 1)) == 2);
  for (Index i = 0; i < 3; ++i) {
    RatVec e = zeros(3);
    e(i) = 1;
    CHECK(phi.gauge(e) <= 1);
  }
  std::map<TreeNode, BasisSpace> one;
  one.emplace(TreeNode{"a", "b"}, poly(cross_polytope(2)));
  FiniteTree chain({"a", "b"}, {{"a"}, {"a", "b"}}, one);
  CHECK(phi_ball(chain) == cross_polytope(2));
  Rng rng(18);
  auto facets = e_ball_facets(t);
  for (int i = 0; i < 20; ++i) {
    RatVec x = rng.vector(3);
    Rat m;
    for (const auto& a : facets) m = std::max(m, abs(a.dot(x)));
    CHECK(m * m == e_norm(t, x).value.square());
  }
}

TEST_CASE("universal truncations") {
  FiniteTree flat = universal_truncation(1, 3);
  CHECK(flat.size() == 3);
  Rng rng(19);
  for (int i = 0; i < 10; ++i) {
    RatVec x = rng.vector(3);
    Rat best;
    for (int j = 1; j <= 3; ++j) {
      Rat r = abs(rational_norm(1, static_cast<std::size_t>(j)).generators()[0](0));
      best = std::max(best, abs(x(flat.index_of({std::to_string(j)}))) / r);
    }
    CHECK(e_norm(flat, x).value.square() == best * best);
  }
  FiniteTree two = universal_truncation(2, 2);
  for (const auto& leaf : two.leaves()) {
    std::vector<int> eta;
    for (const auto& l : leaf) eta.push_back(std::stoi(l));
    CHECK(two.branch(leaf).ball() == catalog_ball(eta));
  }
}
