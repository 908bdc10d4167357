#include "normforge/embedding.hpp"

#include "normforge/catalog.hpp"

#include <algorithm>
#include <map>

namespace normforge {

std::vector<std::pair<std::int64_t, std::int64_t>> frame_layout(Index xdim, Index depth) {
  if (xdim < 1 || depth < 0) throw Error("frame_layout: bad dimensions");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t i = 1; static_cast<Index>(out.size()) < depth; ++i) {
    auto nk = pi(i);
    if (nk.second <= xdim) out.push_back(nk);
  }
  return out;
}

Rat sandwich_lower(Index d) { return 1 - pow2(-static_cast<int>(2 * d + 1)); }
Rat sandwich_upper(Index d) { return 1 - pow2(-static_cast<int>(2 * d + 2)); }

namespace {

// Coordinates of F_d grouped by block, each block ordered by k.
std::map<std::int64_t, std::vector<Index>> blocks_of(const std::vector<std::pair<std::int64_t, std::int64_t>>& layout,
                                                     Index d) {
  std::map<std::int64_t, std::vector<Index>> blocks;
  for (Index i = 0; i < d; ++i) blocks[layout[static_cast<std::size_t>(i)].first].push_back(i);
  return blocks;
}

void check_space(const BasisSpace& x) {
  const PolytopeBall& ball = x.ball();
  for (Index i = 0; i < ball.dim(); ++i) {
    if (ball.gauge(unit(ball.dim(), i)) != 1) throw Error("embedding: the basis of X is not normalized");
  }
  auto mono = is_monotone(ball);
  if (!mono.monotone) throw Error("embedding: the basis of X is not monotone");
}

Rat l2x_square_on(const PolytopeBall& xball, const std::vector<std::pair<std::int64_t, std::int64_t>>& layout,
                  const RatVec& f) {
  std::map<std::int64_t, RatVec> blocks;
  for (Index i = 0; i < f.size(); ++i) {
    if (f(i) == 0) continue;
    auto [n, k] = layout[static_cast<std::size_t>(i)];
    auto it = blocks.find(n);
    if (it == blocks.end()) it = blocks.emplace(n, zeros(xball.dim())).first;
    it->second(k - 1) = f(i);
  }
  Rat s;
  for (const auto& [n, x] : blocks) {
    Rat g = xball.gauge(x);
    s += g * g;
  }
  return s;
}

Rat l2x_dual_square_on(const PolytopeBall& xball, const std::vector<std::pair<std::int64_t, std::int64_t>>& layout,
                       const RatVec& a) {
  auto blocks = blocks_of(layout, a.size());
  Rat s;
  for (const auto& [n, coords] : blocks) {
    PolytopeBall sec = xball.section(static_cast<Index>(coords.size()));
    RatVec an = gather(a, coords);
    Rat best;
    for (const auto& g : sec.generators()) best = std::max(best, abs(an.dot(g)));
    s += best * best;
  }
  return s;
}

using Shape = LevelBall::Shape;

std::unique_ptr<Shape> build_shape(const std::vector<std::vector<Index>>& blocks, std::size_t lo, std::size_t hi,
                                   const PolytopeBall& xball, const std::shared_ptr<const QuadrantPolygon>& q) {
  auto node = std::make_unique<Shape>();
  if (hi - lo == 1) {
    node->coords = blocks[lo];
    node->leaf = xball.section(static_cast<Index>(blocks[lo].size()));
    node->body = node->leaf->body();
    return node;
  }
  std::size_t mid = lo + (hi - lo + 1) / 2;
  node->left = build_shape(blocks, lo, mid, xball, q);
  node->right = build_shape(blocks, mid, hi, xball, q);
  node->coords = node->left->coords;
  node->coords.insert(node->coords.end(), node->right->coords.begin(), node->right->coords.end());
  std::sort(node->coords.begin(), node->coords.end());
  auto local = [&](const std::vector<Index>& sub) {
    std::vector<Index> out;
    for (Index c : sub) {
      out.push_back(static_cast<Index>(std::lower_bound(node->coords.begin(), node->coords.end(), c) -
                                       node->coords.begin()));
    }
    return out;
  };
  node->join = std::make_shared<JoinBody>(node->left->body, local(node->left->coords), node->right->body,
                                          local(node->right->coords), q);
  node->body = node->join;
  return node;
}

int shape_depth(const Shape& s) {
  if (s.leaf) return 0;
  return 1 + std::max(shape_depth(*s.left), shape_depth(*s.right));
}

std::vector<RatVec> shape_generators(const Shape& s) {
  if (s.leaf) return s.leaf->generators();
  return s.join->combine(shape_generators(*s.left), shape_generators(*s.right));
}

}  // namespace

Rat LevelBall::norm(const RatVec& f) const {
  if (f.size() != d) throw DimensionMismatch("level norm: dimension mismatch");
  return body->gauge(f);
}

std::vector<RatVec> LevelBall::generators() const {
  if (catalog_ball) return catalog_ball->generators();
  std::vector<RatVec> g = shape_generators(*shape);
  for (auto& v : g) v *= scale;
  return g;
}

bool sandwich_holds(const BasisSpace& x, Index d, const PolytopeBall& ball) {
  if (ball.dim() != d) throw DimensionMismatch("sandwich: ball dimension");
  const PolytopeBall& xball = x.ball();
  auto layout = frame_layout(x.dim(), d);
  Rat lo = sandwich_lower(d);
  Rat hi = sandwich_upper(d);
  for (const auto& g : ball.generators()) {
    if (lo * lo * l2x_square_on(xball, layout, g) > 1) return false;
  }
  for (const auto& a : ball.facets()) {
    if (l2x_dual_square_on(xball, layout, a) > hi * hi) return false;
  }
  return true;
}

LevelBall find_ld(const BasisSpace& x, Index d, const FindOptions& options) {
  if (d < 1) throw Error("find_ld: d must be positive");
  check_space(x);
  LevelBall level;
  level.d = d;
  const int extra = options.scan_extra_size >= 0 ? options.scan_extra_size : std::max<int>(2, 8 - 2 * static_cast<int>(d));
  const std::size_t max_size = static_cast<std::size_t>(d * (d + 1) + extra);
  auto found = scan_catalog(d, options.scan_budget, max_size, [&](const PolytopeBall& b) { return sandwich_holds(x, d, b); });
  if (found) {
    level.catalog_index = *found;
    level.catalog_ball = rational_norm(d, *found);
    level.scale = 1;
    level.body = level.catalog_ball->body();
    return level;
  }
  const PolytopeBall& xball = x.ball();
  auto layout = frame_layout(x.dim(), d);
  std::vector<std::vector<Index>> blocks;
  for (auto& [n, coords] : blocks_of(layout, d)) blocks.push_back(coords);
  const Rat lo = sandwich_lower(d);
  const Rat hi = sandwich_upper(d);
  const Rat allowed = (hi * hi) / (lo * lo);
  int depth = 0;
  for (std::size_t m = 1; m < blocks.size(); m *= 2) ++depth;
  std::shared_ptr<const QuadrantPolygon> q;
  if (depth > 0) {
    for (int m = 1;; ++m) {
      auto cand = std::make_shared<QuadrantPolygon>(QuadrantPolygon::circle(m));
      Rat loss = 1;
      Rat r = 1 / cand->min_radius_squared();
      for (int i = 0; i < depth; ++i) loss *= r;
      if (loss <= allowed) {
        q = cand;
        level.polygon_edges = m;
        break;
      }
    }
  }
  auto shape = build_shape(blocks, 0, blocks.size(), xball, q);
  if (shape_depth(*shape) != depth) throw Error("find_ld: unbalanced join tree");
  level.scale = 1 / lo;
  level.body = std::make_shared<ScaledBody>(shape->body, level.scale);
  level.shape = std::move(shape);
  return level;
}

// ---------------------------------------------------------------------------

EmbeddingFrame::EmbeddingFrame(BasisSpace x, Index depth, const FindOptions& options)
    : x_(std::move(x)), depth_(depth) {
  if (depth_ < 1) throw Error("embedding: depth must be positive");
  check_space(x_);
  layout_ = frame_layout(x_.dim(), depth_);
  for (const auto& [n, k] : layout_) blocks_ = std::max(blocks_, n);
  std::vector<BodyPtr> parts;
  for (Index d = 1; d <= depth_; ++d) {
    levels_.push_back(find_ld(x_, d, options));
    std::vector<Index> coords;
    for (Index i = 0; i < d; ++i) coords.push_back(i);
    parts.push_back(std::make_shared<EmbeddedBody>(levels_.back().body, depth_, coords));
  }
  f_body_ = std::make_shared<HullUnionBody>(std::move(parts));
}

Rat EmbeddingFrame::l2x_square(const RatVec& f) const {
  if (f.size() != depth_) throw DimensionMismatch("vector is not supported on F_D");
  return l2x_square_on(x_.ball(), layout_, f);
}

Rat EmbeddingFrame::l2x_dual_square(const RatVec& a) const {
  if (a.size() > depth_) throw DimensionMismatch("functional is not supported on F_D");
  return l2x_dual_square_on(x_.ball(), layout_, a);
}

Rat EmbeddingFrame::f_norm(const RatVec& f) const {
  if (f.size() != depth_) throw DimensionMismatch("vector is not supported on F_D");
  return f_body_->gauge(f);
}

RatVec EmbeddingFrame::block(const RatVec& f, std::int64_t n) const {
  RatVec x = zeros(xdim());
  for (Index i = 0; i < depth_; ++i) {
    if (layout_[static_cast<std::size_t>(i)].first == n) x(layout_[static_cast<std::size_t>(i)].second - 1) = f(i);
  }
  return x;
}

ScaledVec EmbeddingFrame::operator_t(const RatVec& f) const {
  if (f.size() != depth_) throw DimensionMismatch("vector is not supported on F_D");
  RatVec v = zeros(xdim());
  for (Index i = 0; i < depth_; ++i) {
    auto [n, k] = layout_[static_cast<std::size_t>(i)];
    v(k - 1) += pow2(-static_cast<int>(n - 1)) * f(i);
  }
  return {v, Rat(3, 4)};
}

ScaledVec EmbeddingFrame::operator_u(const RatVec& x) const {
  if (x.size() != xdim()) throw DimensionMismatch("vector is not in X");
  RatVec w(depth_);
  for (Index i = 0; i < depth_; ++i) {
    auto [n, k] = layout_[static_cast<std::size_t>(i)];
    w(i) = pow2(-static_cast<int>(n - 1)) * x(k - 1);
  }
  return {w, Rat(3, 4)};
}

Rat EmbeddingFrame::u_tail_square(const RatVec& x) const {
  if (x.size() != xdim()) throw DimensionMismatch("vector is not in X");
  const PolytopeBall& ball = x_.ball();
  std::map<std::int64_t, Index> kept;
  for (const auto& [n, k] : layout_) kept[n] = std::max<Index>(kept[n], k);
  Rat s;
  for (std::int64_t n = 1; n <= blocks_; ++n) {
    RatVec rest = x;
    Index k = kept.count(n) ? kept[n] : 0;
    for (Index i = 0; i < k; ++i) rest(i) = 0;
    Rat g = ball.gauge(rest);
    s += Rat(3, 4) * pow2(-2 * static_cast<int>(n - 1)) * g * g;
  }
  Rat g = ball.gauge(x);
  s += g * g * pow2(-2 * static_cast<int>(blocks_));
  return s;
}

RatVec EmbeddingFrame::tu(const RatVec& x) const {
  if (x.size() != xdim()) throw DimensionMismatch("vector is not in X");
  // (sqrt3/2)^2 * sum_{n>=1} 4^-(n-1) = (3/4) / (1 - 1/4)
  Rat coefficient = Rat(3, 4) / (1 - Rat(1, 4));
  return coefficient * x;
}

Rat furthlemma_slack(const EmbeddingFrame& frame, const RatVec& f, Index n) {
  if (n < 0 || n > frame.depth()) throw Error("furthlemma: n out of range");
  RatVec p = partial_sum(n, f);
  return frame.f_norm(f) - frame.f_norm(p) - pow2(-static_cast<int>(2 * n + 4)) * frame.f_norm(f - p);
}

}  // namespace normforge
