#pragma once

#include "normforge/normed_space.hpp"
#include "normforge/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

using TreeNode = std::vector<std::string>;

/// "a/b/c" for the node (a, b, c).
std::string node_key(const TreeNode& node);
TreeNode parse_node_key(const std::string& key);

/// A finite tree of label sequences, closed under nonempty initial segments,
/// with a branch space on every leaf. Coordinates of tree vectors follow
/// nodes() (lexicographic, so every node precedes its extensions).
class FiniteTree {
 public:
  FiniteTree(std::vector<std::string> labels, std::vector<TreeNode> nodes,
             std::map<TreeNode, BasisSpace> branch_norms, std::vector<Rat> constants = {});

  Index size() const { return static_cast<Index>(nodes_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<TreeNode>& leaves() const { return leaves_; }
  const std::vector<Rat>& constants() const { return constants_; }
  const BasisSpace& branch(const TreeNode& leaf) const { return branch_norms_.at(leaf); }
  /// c_n for level n >= 1.
  const Rat& constant(Index level) const;

  Index index_of(const TreeNode& node) const;
  /// Node indices of the initial segments of the leaf, shortest first.
  const std::vector<Index>& chain(const TreeNode& leaf) const { return chains_.at(leaf); }
  RatVec restrict_to_chain(const TreeNode& leaf, const RatVec& x) const;
  /// The tree vector with the given chain coordinates along the leaf.
  RatVec embed_chain(const TreeNode& leaf, const RatVec& y) const;

  /// Same tree with different constants.
  FiniteTree with_constants(std::vector<Rat> constants) const;

 private:
  std::vector<std::string> labels_;
  std::vector<TreeNode> nodes_;
  std::map<TreeNode, Index> index_;
  std::vector<TreeNode> leaves_;
  std::map<TreeNode, std::vector<Index>> chains_;
  std::map<TreeNode, BasisSpace> branch_norms_;
  std::vector<Rat> constants_;
};

/// Whether two norms agree on the span of the first k basis vectors, when
/// this can be decided. nullopt when the norm kinds do not allow a decision.
std::optional<bool> agree_on_prefix(const NormNode& a, const NormNode& b, Index k);

struct TreeValue {
  NormValue value;
  TreeNode leaf;  // lowest leaf attaining the maximum
};

TreeValue e_norm(const FiniteTree& tree, const RatVec& x, const Rat& eps = Rat(1, 1000000000));
TreeValue b_norm(const FiniteTree& tree, const RatVec& x, const Rat& eps = Rat(1, 1000000000));

enum class TreeNormKind { E, B };

/// The E- or B-norm of a tree as a norm expression.
class TreeNorm final : public NormNode {
 public:
  TreeNorm(FiniteTree tree, TreeNormKind which) : tree_(std::move(tree)), which_(which) {}
  Index dim() const override { return tree_.size(); }
  std::string kind() const override { return which_ == TreeNormKind::E ? "tree-E" : "tree-B"; }
  NormValue eval(const RatVec& x, const Rat& eps) const override;
  bool exact() const override;
  const FiniteTree& tree() const { return tree_; }
  TreeNormKind which() const { return which_; }

 private:
  FiniteTree tree_;
  TreeNormKind which_;
};

/// Indicator projection onto a subtree (closed under initial segments).
RatVec subtree_projection(const FiniteTree& tree, const std::vector<TreeNode>& subtree, const RatVec& x);
bool is_subtree(const FiniteTree& tree, const std::vector<TreeNode>& subtree);
/// The subtree of all initial segments of the leaf.
std::vector<TreeNode> branch_subtree(const TreeNode& leaf);

struct B001Report {
  bool ok = true;
  bool decided = true;
  std::size_t checked = 0;
  std::optional<Rat> min_slack;  // exact slack of the squared inequality
  std::optional<RatVec> witness;
  Index level = 0;
};

/// |pi_n f|^2 >= |pi_{n-1} f|^2 + c_n^2 |f_n|^2 for n = 1..d, on the given
/// vectors, and on the ball generators when the norm is a polytope.
B001Report verify_b001(const BasisSpace& space, const std::vector<Rat>& constants,
                       const std::vector<RatVec>& vectors);

enum class SegmentVerdict { NotConstant, ConclusionHolds, ConclusionFails, Undecided };
std::string to_string(SegmentVerdict v);

struct TreeSegmentReport {
  SegmentVerdict verdict = SegmentVerdict::NotConstant;
  std::optional<TreeNode> leaf;
};

TreeSegmentReport b_segment_check(const FiniteTree& tree, const RatVec& u, const RatVec& v);

/// co of the branch balls placed along their chains.
PolytopeBall phi_ball(const FiniteTree& tree);

/// Intersection of the cylinders over the leaves, as facet normals.
std::vector<RatVec> e_ball_facets(const FiniteTree& tree);

/// Nodes eta with |eta| <= depth and entries <= breadth, with Z_leaf on the
/// leaves.
FiniteTree universal_truncation(int depth, int breadth, std::size_t node_cap = 4096);

}  // namespace normforge
