#include "normforge/generators.hpp"

#include <map>

namespace normforge {

PolytopeBall random_extension(Rng& rng, const PolytopeBall& ball, int points) {
  const Index m = ball.dim();
  const auto& gens = ball.generators();
  std::vector<RatVec> out;
  auto lift = [&](const RatVec& p, const Rat& t) {
    RatVec v(m + 1);
    v.head(m) = p;
    v(m) = t;
    return v;
  };
  for (const auto& g : gens) out.push_back(lift(g, Rat(0)));
  out.push_back(lift(zeros(m), Rat(1)));
  for (int i = 0; i < points; ++i) {
    const RatVec& g = gens[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(gens.size()) - 1))];
    Rat s = rng.nonnegative(7, 8);
    if (s > Rat(7, 8)) s = Rat(7, 8);
    Rat t = Rat(rng.uniform(-7, 7), 8);
    out.push_back(lift(s * g, t));
  }
  return PolytopeBall(out);
}

PolytopeBall random_monotone_ball(Rng& rng, Index d, int points) {
  if (d < 1) throw Error("random_monotone_ball: dimension must be positive");
  PolytopeBall ball({make_vec({Rat(1)})});
  for (Index k = 1; k < d; ++k) ball = random_extension(rng, ball, points);
  return ball;
}

FiniteTree random_tree(Rng& rng, std::size_t max_nodes, int max_depth, std::vector<Rat> constants) {
  static const std::vector<std::string> labels = {"a", "b", "c"};
  std::vector<TreeNode> nodes = {{labels[0]}};
  std::map<TreeNode, PolytopeBall> space;
  space.emplace(nodes[0], PolytopeBall({make_vec({Rat(1)})}));
  for (std::size_t tries = 0; nodes.size() < max_nodes && tries < 8 * max_nodes; ++tries) {
    const TreeNode parent = nodes[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(nodes.size()) - 1))];
    if (static_cast<int>(parent.size()) >= max_depth) continue;
    TreeNode child = parent;
    child.push_back(labels[static_cast<std::size_t>(rng.uniform(0, 2))]);
    if (space.count(child)) continue;
    space.emplace(child, random_extension(rng, space.at(parent)));
    nodes.push_back(child);
  }
  std::map<TreeNode, BasisSpace> branches;
  for (const auto& node : nodes) {
    bool leaf = true;
    for (const auto& other : nodes) {
      if (other.size() == node.size() + 1 && std::equal(node.begin(), node.end(), other.begin())) leaf = false;
    }
    if (leaf) branches.emplace(node, BasisSpace::polytope(space.at(node), {"monotone"}));
  }
  return FiniteTree(labels, nodes, branches, std::move(constants));
}

}  // namespace normforge
