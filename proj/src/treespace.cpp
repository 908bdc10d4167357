#include "normforge/treespace.hpp"

#include "normforge/catalog.hpp"

#include <algorithm>
#include <set>

namespace normforge {

std::string node_key(const TreeNode& node) {
  std::string s;
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) s += '/';
    s += node[i];
  }
  return s;
}

TreeNode parse_node_key(const std::string& key) {
  TreeNode out;
  std::string cur;
  for (char c : key) {
    if (c == '/') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (const auto& l : out) {
    if (l.empty()) throw Error("malformed node key '" + key + "'");
  }
  return out;
}

namespace {

bool is_prefix(const TreeNode& a, const TreeNode& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::size_t common_prefix(const TreeNode& a, const TreeNode& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

std::optional<bool> agree_on_prefix(const NormNode& a, const NormNode& b, Index k) {
  if (&a == &b) return true;
  if (k < 1 || k > a.dim() || k > b.dim()) throw Error("agree_on_prefix: k out of range");
  if (a.polytope() && b.polytope()) return a.polytope()->section(k) == b.polytope()->section(k);
  auto la = dynamic_cast<const L2SumNorm*>(&a);
  auto lb = dynamic_cast<const L2SumNorm*>(&b);
  if (!la || !lb) return std::nullopt;
  // Blocks restricted to the first k coordinates must match and their
  // retained coordinates must form a prefix of each block.
  auto restricted = [k](const L2SumNorm& n) {
    std::vector<std::pair<std::vector<Index>, const L2SumNorm::Block*>> out;
    for (const auto& blk : n.blocks()) {
      std::vector<Index> kept;
      for (Index c : blk.coords) {
        if (c < k) kept.push_back(c);
      }
      if (!kept.empty()) out.emplace_back(std::move(kept), &blk);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };
  auto ra = restricted(*la);
  auto rb = restricted(*lb);
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].first != rb[i].first) return false;
    const auto& ba = *ra[i].second;
    const auto& bb = *rb[i].second;
    const std::size_t m = ra[i].first.size();
    for (std::size_t j = 0; j < m; ++j) {
      if (ba.coords[j] != ra[i].first[j] || bb.coords[j] != ra[i].first[j]) return std::nullopt;
    }
    auto sub = agree_on_prefix(*ba.norm, *bb.norm, static_cast<Index>(m));
    if (!sub || !*sub) return sub;
  }
  return true;
}

FiniteTree::FiniteTree(std::vector<std::string> labels, std::vector<TreeNode> nodes,
                       std::map<TreeNode, BasisSpace> branch_norms, std::vector<Rat> constants)
    : labels_(std::move(labels)), nodes_(std::move(nodes)), branch_norms_(std::move(branch_norms)),
      constants_(std::move(constants)) {
  if (nodes_.empty()) throw Error("tree: no nodes");
  std::set<std::string> alphabet(labels_.begin(), labels_.end());
  std::sort(nodes_.begin(), nodes_.end());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.empty()) throw Error("tree: the empty sequence is not a node");
    for (const auto& l : n) {
      if (!alphabet.empty() && !alphabet.count(l)) throw Error("tree: label '" + l + "' not in the alphabet");
    }
    if (i > 0 && nodes_[i - 1] == n) throw Error("tree: duplicate node " + node_key(n));
    index_.emplace(n, static_cast<Index>(i));
  }
  for (const auto& n : nodes_) {
    for (std::size_t l = 1; l < n.size(); ++l) {
      TreeNode p(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(l));
      if (!index_.count(p)) throw Error("tree: node " + node_key(n) + " is missing its initial segment " + node_key(p));
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    bool leaf = i + 1 == nodes_.size() || !is_prefix(nodes_[i], nodes_[i + 1]);
    if (!leaf) continue;
    const auto& n = nodes_[i];
    leaves_.push_back(n);
    std::vector<Index> ch;
    for (std::size_t l = 1; l <= n.size(); ++l) ch.push_back(index_.at(TreeNode(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(l))));
    chains_.emplace(n, std::move(ch));
    auto it = branch_norms_.find(n);
    if (it == branch_norms_.end()) throw Error("tree: leaf " + node_key(n) + " has no branch norm");
    if (it->second.dim() != static_cast<Index>(n.size()))
      throw DimensionMismatch("tree: branch norm of " + node_key(n) + " has dimension " +
                              std::to_string(it->second.dim()) + ", expected " + std::to_string(n.size()));
  }
  for (const auto& [k, v] : branch_norms_) {
    if (!chains_.count(k)) throw Error("tree: branch norm given for " + node_key(k) + ", which is not a leaf");
  }
  for (const auto& c : constants_) {
    if (c <= 0) throw Error("tree: constants must be positive");
  }
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves_.size(); ++j) {
      std::size_t l = common_prefix(leaves_[i], leaves_[j]);
      if (l == 0) continue;
      auto ok = agree_on_prefix(*branch(leaves_[i]).norm, *branch(leaves_[j]).norm, static_cast<Index>(l));
      if (!ok) throw Error("tree: cannot verify coherence of leaves " + node_key(leaves_[i]) + " and " + node_key(leaves_[j]));
      if (!*ok) throw Error("tree: coherence violation between leaves " + node_key(leaves_[i]) + " and " + node_key(leaves_[j]));
    }
  }
}

const Rat& FiniteTree::constant(Index level) const {
  if (level < 1 || level > static_cast<Index>(constants_.size()))
    throw Error("tree: no constant for level " + std::to_string(level));
  return constants_[static_cast<std::size_t>(level - 1)];
}

Index FiniteTree::index_of(const TreeNode& node) const {
  auto it = index_.find(node);
  if (it == index_.end()) throw Error("tree: unknown node " + node_key(node));
  return it->second;
}

RatVec FiniteTree::restrict_to_chain(const TreeNode& leaf, const RatVec& x) const {
  if (x.size() != size()) throw DimensionMismatch("tree vector has the wrong dimension");
  return gather(x, chain(leaf));
}

RatVec FiniteTree::embed_chain(const TreeNode& leaf, const RatVec& y) const {
  const auto& ch = chain(leaf);
  if (y.size() != static_cast<Index>(ch.size())) throw DimensionMismatch("chain vector has the wrong dimension");
  RatVec x = zeros(size());
  for (std::size_t i = 0; i < ch.size(); ++i) x(ch[i]) = y(static_cast<Index>(i));
  return x;
}

FiniteTree FiniteTree::with_constants(std::vector<Rat> constants) const {
  FiniteTree t = *this;
  for (const auto& c : constants) {
    if (c <= 0) throw Error("tree: constants must be positive");
  }
  t.constants_ = std::move(constants);
  return t;
}

namespace {

// Larger value wins; ties keep the earlier leaf.
bool greater(const NormValue& a, const NormValue& b) {
  if (a.is_exact() && b.is_exact()) return compare_exact(a, b) > 0;
  return a.interval().hi > b.interval().hi;
}

NormValue max_value(const NormValue& a, const NormValue& b) {
  if (a.is_exact() && b.is_exact()) return compare_exact(a, b) >= 0 ? a : b;
  return NormValue::interval(max(a.interval(), b.interval()));
}

}  // namespace

TreeValue e_norm(const FiniteTree& tree, const RatVec& x, const Rat& eps) {
  std::optional<TreeValue> best;
  for (const auto& leaf : tree.leaves()) {
    NormValue v = eval_norm(tree.branch(leaf), tree.restrict_to_chain(leaf, x), eps);
    if (!best) {
      best = TreeValue{v, leaf};
    } else {
      bool better = greater(v, best->value);
      best->value = max_value(best->value, v);
      if (better) best->leaf = leaf;
    }
  }
  return *best;
}

NormValue TreeNorm::eval(const RatVec& x, const Rat& eps) const {
  if (x.size() != dim()) throw DimensionMismatch("vector is not a tree vector");
  return which_ == TreeNormKind::E ? e_norm(tree_, x, eps).value : b_norm(tree_, x, eps).value;
}

bool TreeNorm::exact() const {
  for (const auto& leaf : tree_.leaves()) {
    if (!tree_.branch(leaf).exact()) return false;
  }
  return true;
}

TreeValue b_norm(const FiniteTree& tree, const RatVec& x, const Rat& eps) {
  std::optional<TreeValue> best;
  for (const auto& leaf : tree.leaves()) {
    const auto& ch = tree.chain(leaf);
    std::vector<bool> on(static_cast<std::size_t>(tree.size()), false);
    for (Index i : ch) on[i] = true;
    Rat penalty;
    for (Index i = 0; i < tree.size(); ++i) {
      if (on[i] || x(i) == 0) continue;
      const Rat& c = tree.constant(static_cast<Index>(tree.nodes()[i].size()));
      penalty += c * c * x(i) * x(i);
    }
    NormValue branch = eval_norm(tree.branch(leaf), gather(x, ch), eps);
    NormValue v = branch.is_exact()
                      ? NormValue::sqrt_of(branch.square() + penalty)
                      : NormValue::interval(sqrt(square_nonneg(branch.interval().lo < 0
                                                                   ? CertInterval(0, branch.interval().hi)
                                                                   : branch.interval()) +
                                                     penalty,
                                                 eps / 2));
    if (!best) {
      best = TreeValue{v, leaf};
    } else {
      bool better = greater(v, best->value);
      best->value = max_value(best->value, v);
      if (better) best->leaf = leaf;
    }
  }
  return *best;
}

bool is_subtree(const FiniteTree& tree, const std::vector<TreeNode>& subtree) {
  std::set<TreeNode> s(subtree.begin(), subtree.end());
  for (const auto& n : s) {
    if (n.empty()) return false;
    try {
      tree.index_of(n);
    } catch (const Error&) {
      return false;
    }
    for (std::size_t l = 1; l < n.size(); ++l) {
      if (!s.count(TreeNode(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(l)))) return false;
    }
  }
  return true;
}

RatVec subtree_projection(const FiniteTree& tree, const std::vector<TreeNode>& subtree, const RatVec& x) {
  if (!is_subtree(tree, subtree)) throw Error("not a subtree");
  if (x.size() != tree.size()) throw DimensionMismatch("tree vector has the wrong dimension");
  RatVec y = zeros(tree.size());
  for (const auto& n : subtree) {
    Index i = tree.index_of(n);
    y(i) = x(i);
  }
  return y;
}

std::vector<TreeNode> branch_subtree(const TreeNode& leaf) {
  std::vector<TreeNode> out;
  for (std::size_t l = 1; l <= leaf.size(); ++l) out.emplace_back(leaf.begin(), leaf.begin() + static_cast<std::ptrdiff_t>(l));
  return out;
}

// ---------------------------------------------------------------------------

B001Report verify_b001(const BasisSpace& space, const std::vector<Rat>& constants,
                       const std::vector<RatVec>& vectors) {
  const Index d = space.dim();
  if (static_cast<Index>(constants.size()) < d) throw Error("verify_b001: need a constant for every level");
  B001Report report;
  std::vector<RatVec> all = vectors;
  if (const PolytopeBall* ball = space.norm->polytope()) {
    for (const auto& g : ball->generators()) all.push_back(g);
  }
  for (const auto& f : all) {
    if (f.size() != d) throw DimensionMismatch("verify_b001: vector dimension");
    ++report.checked;
    for (Index n = 1; n <= d; ++n) {
      const Rat& c = constants[static_cast<std::size_t>(n - 1)];
      Rat gain = c * c * f(n - 1) * f(n - 1);
      if (f(n - 1) == 0) continue;  // both sides coincide
      RatVec hi_vec = partial_sum(n, f);
      RatVec lo_vec = partial_sum(n - 1, f);
      std::optional<Rat> slack;
      bool fail = false;
      bool decided = false;
      for (Rat eps = pow2(-40); eps >= pow2(-200); eps /= Rat(1 << 20)) {
        NormValue a = eval_norm(space, hi_vec, eps);
        NormValue b = eval_norm(space, lo_vec, eps);
        if (a.is_exact() && b.is_exact()) {
          slack = a.square() - b.square() - gain;
          fail = *slack < 0;
          decided = true;
          break;
        }
        CertInterval ea = a.enclose(eps);
        CertInterval eb = b.enclose(eps);
        CertInterval sa = square_nonneg(CertInterval(ea.lo < 0 ? Rat(0) : ea.lo, ea.hi));
        CertInterval sb = square_nonneg(CertInterval(eb.lo < 0 ? Rat(0) : eb.lo, eb.hi));
        Rat lo = sa.lo - sb.hi - gain;
        Rat hi = sa.hi - sb.lo - gain;
        if (lo >= 0) {
          slack = lo;
          decided = true;
          break;
        }
        if (hi < 0) {
          slack = hi;
          fail = true;
          decided = true;
          break;
        }
      }
      if (!decided) {
        report.decided = false;
        report.ok = false;
        if (!report.witness) {
          report.witness = f;
          report.level = n;
        }
        continue;
      }
      if (!report.min_slack || *slack < *report.min_slack) report.min_slack = slack;
      if (fail) {
        report.ok = false;
        if (!report.witness) {
          report.witness = f;
          report.level = n;
        }
      }
    }
  }
  return report;
}

std::string to_string(SegmentVerdict v) {
  switch (v) {
    case SegmentVerdict::NotConstant:
      return "not-constant";
    case SegmentVerdict::ConclusionHolds:
      return "constant-conclusion-holds";
    case SegmentVerdict::ConclusionFails:
      return "constant-conclusion-fails";
    case SegmentVerdict::Undecided:
      break;
  }
  return "undecided";
}

TreeSegmentReport b_segment_check(const FiniteTree& tree, const RatVec& u, const RatVec& v) {
  if (equal(u, v)) throw Error("segment check needs u != v");
  RatVec m = (u + v) / 2;
  TreeValue bu = b_norm(tree, u);
  TreeValue bv = b_norm(tree, v);
  TreeValue bm = b_norm(tree, m);
  if (!bu.value.is_exact() || !bv.value.is_exact() || !bm.value.is_exact()) return {SegmentVerdict::Undecided, {}};
  if (compare_exact(bu.value, bv.value) != 0 || compare_exact(bu.value, bm.value) != 0)
    return {SegmentVerdict::NotConstant, {}};
  const TreeNode& leaf = bm.leaf;
  const auto& ch = tree.chain(leaf);
  std::vector<bool> on(static_cast<std::size_t>(tree.size()), false);
  for (Index i : ch) on[i] = true;
  RatVec diff = v - u;
  for (Index i = 0; i < tree.size(); ++i) {
    if (!on[i] && diff(i) != 0) return {SegmentVerdict::ConclusionFails, leaf};
  }
  auto sub = branch_subtree(leaf);
  RatVec pu = subtree_projection(tree, sub, u);
  RatVec pv = subtree_projection(tree, sub, v);
  TreeValue a = b_norm(tree, pu);
  TreeValue b = b_norm(tree, pv);
  TreeValue c = b_norm(tree, (pu + pv) / 2);
  bool flat = compare_exact(a.value, b.value) == 0 && compare_exact(a.value, c.value) == 0;
  return {flat ? SegmentVerdict::ConclusionHolds : SegmentVerdict::ConclusionFails, leaf};
}

PolytopeBall phi_ball(const FiniteTree& tree) {
  std::vector<RatVec> gens;
  for (const auto& leaf : tree.leaves()) {
    const PolytopeBall* ball = tree.branch(leaf).norm->polytope();
    if (!ball) throw Error("phi_ball: branch norm of " + node_key(leaf) + " is not a polytope");
    for (const auto& g : ball->generators()) gens.push_back(tree.embed_chain(leaf, g));
  }
  return PolytopeBall(gens);
}

std::vector<RatVec> e_ball_facets(const FiniteTree& tree) {
  std::vector<RatVec> out;
  for (const auto& leaf : tree.leaves()) {
    const PolytopeBall* ball = tree.branch(leaf).norm->polytope();
    if (!ball) throw Error("E ball: branch norm of " + node_key(leaf) + " is not a polytope");
    for (const auto& a : ball->facets()) out.push_back(sign_normalized(tree.embed_chain(leaf, a)));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end(), [](const RatVec& a, const RatVec& b) { return equal(a, b); }),
            out.end());
  return out;
}

FiniteTree universal_truncation(int depth, int breadth, std::size_t node_cap) {
  if (depth < 1 || breadth < 1) throw Error("universal_truncation: depth and breadth must be positive");
  std::size_t count = 0;
  std::size_t layer = 1;
  for (int l = 1; l <= depth; ++l) {
    layer *= static_cast<std::size_t>(breadth);
    count += layer;
    if (count > node_cap)
      throw Error("universal_truncation: " + std::to_string(count) + "+ nodes exceed the cap of " +
                  std::to_string(node_cap));
  }
  std::vector<std::string> labels;
  for (int b = 1; b <= breadth; ++b) labels.push_back(std::to_string(b));
  std::vector<TreeNode> nodes;
  std::map<TreeNode, BasisSpace> norms;
  std::vector<int> eta;
  auto rec = [&](auto&& self) -> void {
    if (!eta.empty()) {
      TreeNode n;
      for (int e : eta) n.push_back(std::to_string(e));
      nodes.push_back(n);
      if (static_cast<int>(eta.size()) == depth) norms.emplace(n, catalog_space(eta));
    }
    if (static_cast<int>(eta.size()) == depth) return;
    for (int b = 1; b <= breadth; ++b) {
      eta.push_back(b);
      self(self);
      eta.pop_back();
    }
  };
  rec(rec);
  return FiniteTree(labels, nodes, std::move(norms));
}

}  // namespace normforge
