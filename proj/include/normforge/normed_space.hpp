#pragma once

#include "normforge/interval.hpp"
#include "normforge/polytope.hpp"
#include "normforge/rational.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace normforge {

/// A node of a norm expression: a norm on R^dim that can be evaluated.
class NormNode {
 public:
  virtual ~NormNode() = default;

  virtual Index dim() const = 0;
  virtual std::string kind() const = 0;
  /// Exact value when exact() is true; otherwise an enclosure of width at
  /// most eps.
  virtual NormValue eval(const RatVec& x, const Rat& eps) const = 0;
  virtual bool exact() const = 0;
  /// The unit ball, for polytope-only expressions.
  virtual const PolytopeBall* polytope() const { return nullptr; }
};

using NormPtr = std::shared_ptr<const NormNode>;

class PolytopeNorm final : public NormNode {
 public:
  explicit PolytopeNorm(PolytopeBall ball) : ball_(std::move(ball)) {}
  Index dim() const override { return ball_.dim(); }
  std::string kind() const override { return "polytope"; }
  NormValue eval(const RatVec& x, const Rat& eps) const override;
  bool exact() const override { return true; }
  const PolytopeBall* polytope() const override { return &ball_; }
  const PolytopeBall& ball() const { return ball_; }

 private:
  PolytopeBall ball_;
};

/// (sum_b |x restricted to block b|_b^2)^{1/2}.
class L2SumNorm final : public NormNode {
 public:
  struct Block {
    NormPtr norm;
    std::vector<Index> coords;
  };

  L2SumNorm(Index dim, std::vector<Block> blocks);
  Index dim() const override { return dim_; }
  std::string kind() const override { return "l2sum"; }
  NormValue eval(const RatVec& x, const Rat& eps) const override;
  bool exact() const override;
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  Index dim_;
  std::vector<Block> blocks_;
};

/// A finite-dimensional space with the standard basis as distinguished
/// basis.
struct BasisSpace {
  NormPtr norm;
  std::set<std::string> tags;

  BasisSpace() = default;
  explicit BasisSpace(NormPtr n, std::set<std::string> t = {}) : norm(std::move(n)), tags(std::move(t)) {}
  static BasisSpace polytope(PolytopeBall ball, std::set<std::string> tags = {});

  Index dim() const { return norm->dim(); }
  bool exact() const { return norm->exact(); }
  /// The polytope ball; throws Error("exact norm required") otherwise.
  const PolytopeBall& ball() const;
};

NormValue eval_norm(const BasisSpace& space, const RatVec& x, const Rat& eps = Rat(1, 1000000000));

/// Keeps the first n coordinates.
RatVec partial_sum(Index n, const RatVec& x);
Rat coordinate_functional(Index i, const RatVec& x);  // 1-based

struct MonotoneVerdict {
  bool monotone = true;
  std::optional<RatVec> witness;  // x with |P_n x| > |x|
  Index n = 0;
};

MonotoneVerdict is_monotone(const PolytopeBall& ball);
MonotoneVerdict is_monotone(const BasisSpace& space);

/// Norms agree on the span of the first k basis vectors.
bool one_equivalent(const PolytopeBall& a, const PolytopeBall& b, Index k);
bool one_equivalent(const BasisSpace& a, const BasisSpace& b, Index k);

}  // namespace normforge
