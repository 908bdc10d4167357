#pragma once

#include "normforge/body.hpp"
#include "normforge/interval.hpp"
#include "normforge/polytope.hpp"
#include "normforge/treespace.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

/// {z : |a . z| <= 1 for every normal a}, with supports from an exact LP.
class HalfspaceBody final : public Body {
 public:
  HalfspaceBody(std::vector<RatVec> normals, Index dim);
  Index dim() const override { return dim_; }
  Support support(const RatVec& y) const override;
  Rat gauge(const RatVec& x) const override;
  const std::vector<RatVec>& normals() const { return normals_; }

 private:
  std::vector<RatVec> normals_;
  Index dim_;
};

/// The pair (X, W): a polytope norm on R^d given by its ball, and a
/// symmetric polytope W. The level balls are 2^n W + 2^-n B_X.
class InterpolationSpec {
 public:
  InterpolationSpec(BodyPtr x_ball, PolytopeBall w, std::string x_description = "polytope");
  static InterpolationSpec polytope(const PolytopeBall& x, PolytopeBall w);
  static InterpolationSpec tree(const FiniteTree& tree);

  Index dim() const { return w_.dim(); }
  const PolytopeBall& w() const { return w_; }
  const BodyPtr& x_ball() const { return x_; }
  const std::string& x_description() const { return x_description_; }
  const std::optional<FiniteTree>& source_tree() const { return tree_; }

  Rat x_norm(const RatVec& x) const { return x_->gauge(x); }
  Rat w_gauge(const RatVec& x) const { return w_.gauge(x); }
  /// ||x||_n, the gauge of 2^n W + 2^-n B_X, exact.
  Rat level_norm(int n, const RatVec& x) const;

 private:
  BodyPtr level_body(int n) const;

  BodyPtr x_;
  PolytopeBall w_;
  BodyPtr w_body_;
  std::string x_description_;
  std::optional<FiniteTree> tree_;
  struct Cache {
    std::mutex mutex;
    std::map<int, BodyPtr> levels;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

class InterpolationNorm final : public NormNode {
 public:
  explicit InterpolationNorm(std::shared_ptr<const InterpolationSpec> spec) : spec_(std::move(spec)) {}
  Index dim() const override { return spec_->dim(); }
  std::string kind() const override { return "interpolation"; }
  NormValue eval(const RatVec& x, const Rat& eps) const override;
  bool exact() const override { return false; }
  const InterpolationSpec& spec() const { return *spec_; }

 private:
  std::shared_ptr<const InterpolationSpec> spec_;
};

/// Enclosure of (sum_n ||x||_n^2)^{1/2} of width at most eps, with the tail
/// bounded by 4^-N gauge_W(x)^2 / 3.
struct InterpValue {
  CertInterval value;
  int levels = 0;
  Rat partial_square;
  Rat tail_bound;
};

InterpValue interpolation_norm(const InterpolationSpec& spec, const RatVec& x, const Rat& eps);
InterpValue interpolation_norm_levels(const InterpolationSpec& spec, const RatVec& x, int levels,
                                      const Rat& eps);

/// (sum_n (2^n + 2^-n)^-2)^{1/2}, enclosed with width at most eps.
CertInterval interpolation_constant(const Rat& eps);

struct InterpProjReport {
  bool contractive_x = false;  // P B_X inside B_X
  bool w_invariant = false;    // P W inside W
  bool scale_law_applies = false;  // P W = P B_X
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t undecided = 0;
  std::optional<RatVec> witness;
  std::optional<CertInterval> ratio;  // |||x||| / ||x|| on PX
  bool ratio_matches = true;
  int exact_levels = 0;  // levels where ||x||_n (2^n + 2^-n) = ||x|| was checked exactly
  std::string failure;

  bool ok() const {
    return contractive_x && w_invariant && violations == 0 && undecided == 0 && ratio_matches && failure.empty();
  }
};

/// Checks |||Px||| <= |||x||| on the vectors and, when PW = PB_X, the scale
/// law on PX, for the coordinate projection onto coords.
InterpProjReport verify_interpproj(const InterpolationSpec& spec, const std::vector<Index>& coords,
                                   const std::vector<RatVec>& vectors, const Rat& eps);

/// The pair (E, co Phi) of a tree with polytope branch norms.
InterpolationSpec build_A(const FiniteTree& tree);

/// P_k W inside W and P_k B_X inside B_X for every initial projection P_k,
/// so that every level ball, and the interpolation norm, is monotone.
bool basis_monotone(const InterpolationSpec& spec);

/// Coordinates of the chain of a leaf, for "branch:<leaf>" projections.
std::vector<Index> branch_coords(const FiniteTree& tree, const TreeNode& leaf);
/// Coordinates of a subtree.
std::vector<Index> subtree_coords(const FiniteTree& tree, const std::vector<TreeNode>& subtree);

}  // namespace normforge
