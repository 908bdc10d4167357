#include "normforge/normed_space.hpp"

namespace normforge {

NormValue PolytopeNorm::eval(const RatVec& x, const Rat&) const { return NormValue::rational(ball_.gauge(x)); }

L2SumNorm::L2SumNorm(Index dim, std::vector<Block> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  std::vector<bool> used(static_cast<std::size_t>(dim_), false);
  for (const auto& b : blocks_) {
    if (static_cast<Index>(b.coords.size()) != b.norm->dim()) throw DimensionMismatch("l2 sum: block size");
    for (Index c : b.coords) {
      if (c < 0 || c >= dim_ || used[c]) throw Error("l2 sum: blocks must partition the coordinates");
      used[c] = true;
    }
  }
  for (bool u : used) {
    if (!u) throw Error("l2 sum: blocks must partition the coordinates");
  }
}

bool L2SumNorm::exact() const {
  for (const auto& b : blocks_) {
    if (!b.norm->exact()) return false;
  }
  return true;
}

NormValue L2SumNorm::eval(const RatVec& x, const Rat& eps) const {
  if (x.size() != dim_) throw DimensionMismatch("l2 sum: dimension mismatch");
  if (exact()) {
    Rat s;
    for (const auto& b : blocks_) s += b.norm->eval(gather(x, b.coords), eps).square();
    return NormValue::sqrt_of(s);
  }
  const Rat inner = eps / (4 * Rat(static_cast<long>(blocks_.size())) + 4);
  CertInterval s = CertInterval::point(0);
  for (const auto& b : blocks_) {
    for (Rat e = inner;; e /= 4) {
      CertInterval v = b.norm->eval(gather(x, b.coords), e).enclose(e);
      CertInterval sq = square_nonneg(CertInterval(v.lo < 0 ? Rat(0) : v.lo, v.hi));
      if (sq.width() <= inner || e < pow2(-200)) {
        s = s + sq;
        break;
      }
    }
  }
  return NormValue::interval(sqrt(s, eps / 4));
}

BasisSpace BasisSpace::polytope(PolytopeBall ball, std::set<std::string> tags) {
  return BasisSpace(std::make_shared<PolytopeNorm>(std::move(ball)), std::move(tags));
}

const PolytopeBall& BasisSpace::ball() const {
  const PolytopeBall* b = norm->polytope();
  if (!b) throw Error("exact norm required");
  return *b;
}

NormValue eval_norm(const BasisSpace& space, const RatVec& x, const Rat& eps) {
  if (x.size() != space.dim())
    throw DimensionMismatch("vector has dimension " + std::to_string(x.size()) + ", space has dimension " +
                            std::to_string(space.dim()));
  return space.norm->eval(x, eps);
}

RatVec partial_sum(Index n, const RatVec& x) {
  if (n < 0 || n > x.size()) throw Error("partial_sum: n out of range");
  RatVec y = x;
  for (Index i = n; i < y.size(); ++i) y(i) = 0;
  return y;
}

Rat coordinate_functional(Index i, const RatVec& x) {
  if (i < 1 || i > x.size()) throw Error("coordinate functional index out of range");
  return x(i - 1);
}

MonotoneVerdict is_monotone(const PolytopeBall& ball) {
  for (Index n = 1; n < ball.dim(); ++n) {
    for (const auto& g : ball.generators()) {
      if (!ball.contains(partial_sum(n, g))) return {false, g, n};
    }
  }
  return {};
}

MonotoneVerdict is_monotone(const BasisSpace& space) { return is_monotone(space.ball()); }

bool one_equivalent(const PolytopeBall& a, const PolytopeBall& b, Index k) {
  if (k < 1 || k > a.dim() || k > b.dim()) throw Error("one_equivalent: k out of range");
  return a.section(k) == b.section(k);
}

bool one_equivalent(const BasisSpace& a, const BasisSpace& b, Index k) {
  return one_equivalent(a.ball(), b.ball(), k);
}

}  // namespace normforge
