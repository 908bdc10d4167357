#pragma once

#include "normforge/body.hpp"
#include "normforge/interval.hpp"
#include "normforge/normed_space.hpp"
#include "normforge/polytope.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normforge {

/// Position (n, k) of f_i in l2(X): the i-th pair of the diagonal
/// enumeration with k <= dim X.
std::vector<std::pair<std::int64_t, std::int64_t>> frame_layout(Index xdim, Index depth);

/// 1 - 2^-(2d+1) and 1 - 2^-(2d+2).
Rat sandwich_lower(Index d);
Rat sandwich_upper(Index d);

/// The ball of |.|_d on F_d. Catalog levels carry their catalog index;
/// constructed levels are l_Q-joins of block sections of X along a balanced
/// binary tree, scaled by 1 / (1 - 2^-(2d+1)).
struct LevelBall {
  struct Shape {
    std::vector<Index> coords;  // coordinates of F_d covered by this node
    std::optional<PolytopeBall> leaf;
    std::unique_ptr<Shape> left;
    std::unique_ptr<Shape> right;
    std::shared_ptr<const JoinBody> join;
    BodyPtr body;  // in the local coordinates of this node
  };

  Index d = 0;
  std::optional<std::size_t> catalog_index;
  std::optional<PolytopeBall> catalog_ball;
  std::shared_ptr<const Shape> shape;
  int polygon_edges = 0;
  Rat scale;  // 1/kappa for constructed levels
  BodyPtr body;

  std::string construction() const { return catalog_index ? "catalog" : "join"; }
  Rat norm(const RatVec& f) const;  // |f|_d, exact
  /// Extreme points (up to sign) of the ball.
  std::vector<RatVec> generators() const;
};

struct FindOptions {
  std::size_t scan_budget = 2000;
  /// Encoding sizes enumerated beyond d(d+1), the size of the smallest
  /// ball; negative selects max(2, 8 - 2d).
  int scan_extra_size = -1;
};

class EmbeddingFrame;

/// Least catalog index satisfying the sandwich on F_d, within the scan
/// budget; beyond the budget, a constructed ball satisfying the same
/// sandwich (with no catalog index).
LevelBall find_ld(const BasisSpace& x, Index d, const FindOptions& options = {});

/// Exact decision of the sandwich for an explicit ball on F_d.
bool sandwich_holds(const BasisSpace& x, Index d, const PolytopeBall& ball);

/// sqrt(q) times a rational vector, with q in {1, 3/4}: T and U images.
struct ScaledVec {
  RatVec v;
  Rat radicand = 1;  // the vector is sqrt(radicand) * v
};

class EmbeddingFrame {
 public:
  EmbeddingFrame(BasisSpace x, Index depth, const FindOptions& options = {});

  const BasisSpace& space() const { return x_; }
  Index depth() const { return depth_; }
  Index xdim() const { return x_.dim(); }
  const std::vector<std::pair<std::int64_t, std::int64_t>>& layout() const { return layout_; }
  const LevelBall& level(Index d) const { return levels_.at(static_cast<std::size_t>(d - 1)); }

  /// ||f||_{l2(X)}^2, exact.
  Rat l2x_square(const RatVec& f) const;
  NormValue l2x_norm(const RatVec& f) const { return NormValue::sqrt_of(l2x_square(f)); }
  /// Dual norm squared of a functional on F_d (coordinates 1..d).
  Rat l2x_dual_square(const RatVec& a) const;
  /// Gauge of co(union of the level balls), exact.
  Rat f_norm(const RatVec& f) const;
  const BodyPtr& f_body() const { return f_body_; }

  /// Block n of f as a vector of X (zero padded).
  RatVec block(const RatVec& f, std::int64_t n) const;
  std::int64_t block_count() const { return blocks_; }

  ScaledVec operator_t(const RatVec& f) const;
  /// U x restricted to F_D.
  ScaledVec operator_u(const RatVec& x) const;
  /// ||Ux - (Ux restricted to F_D)||_{l2(X)}^2, exact (geometric tail).
  Rat u_tail_square(const RatVec& x) const;
  /// T(Ux) for the untruncated U, summed in closed form.
  RatVec tu(const RatVec& x) const;

 private:
  BasisSpace x_;
  Index depth_;
  std::vector<std::pair<std::int64_t, std::int64_t>> layout_;
  std::int64_t blocks_ = 0;
  std::vector<LevelBall> levels_;
  BodyPtr f_body_;
};

/// Slack of ||f|| - ||P_n f|| - 2^-(2n+4) ||f - P_n f||, exact.
Rat furthlemma_slack(const EmbeddingFrame& frame, const RatVec& f, Index n);

}  // namespace normforge
