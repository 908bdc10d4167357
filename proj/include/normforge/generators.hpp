#pragma once

#include "normforge/polytope.hpp"
#include "normforge/random.hpp"
#include "normforge/treespace.hpp"

namespace normforge {

/// co(B x {0} u {(0, 1)} u {(p_i, t_i)}) with p_i in (7/8)B and |t_i| <= 7/8:
/// a normalized monotone extension whose section is B. The new coordinate
/// gains at least |t|/7 over the section norm.
PolytopeBall random_extension(Rng& rng, const PolytopeBall& ball, int points = 2);

/// A random normalized monotone polytope norm on R^d.
PolytopeBall random_monotone_ball(Rng& rng, Index d, int points = 2);

/// A random coherent tree with at most max_nodes nodes and depth at most
/// max_depth. Branch spaces are random monotone extensions along the tree.
FiniteTree random_tree(Rng& rng, std::size_t max_nodes, int max_depth, std::vector<Rat> constants = {});

}  // namespace normforge
