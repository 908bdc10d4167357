#include "normforge/body.hpp"

#include "normforge/linalg.hpp"

#include <algorithm>

namespace normforge {

namespace {

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s;
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != 0 && b(i) != 0) s += a(i) * b(i);
  }
  return s;
}

// Row r of [lambda | binv] divided by d_r, compared lexicographically.
bool lex_ratio_less(const RatVec& lambda, const RatMat& binv, const RatVec& d, Index a, Index b) {
  Rat la = lambda(a) / d(a);
  Rat lb = lambda(b) / d(b);
  if (la != lb) return la < lb;
  for (Index j = 0; j < binv.cols(); ++j) {
    Rat xa = binv(a, j) / d(a);
    Rat xb = binv(b, j) / d(b);
    if (xa != xb) return xa < xb;
  }
  return false;
}

}  // namespace

Rat Body::gauge(const RatVec& x) const { return cg_gauge(*this, x).value; }

GaugeCertificate cg_gauge(const Body& body, const RatVec& x) {
  const Index d = body.dim();
  if (x.size() != d) throw DimensionMismatch("gauge: vector has dimension " + std::to_string(x.size()) +
                                             ", body has dimension " + std::to_string(d));
  GaugeCertificate cert;
  if (is_zero(x)) {
    cert.value = 0;
    cert.dual = zeros(d);
    return cert;
  }

  // Initial basis: the support point towards x, then support points in
  // directions orthogonal to everything chosen so far.
  std::vector<RatVec> points;
  points.reserve(static_cast<std::size_t>(d));
  RatVec dir = x;
  for (Index i = 0; i < d; ++i) {
    if (i > 0) {
      auto ns = null_space(rows_to_matrix(points, d));
      dir = ns.front();
    }
    Support s = body.support(dir);
    if (s.value <= 0) throw Error("not a norm: body is not full-dimensional");
    points.push_back(std::move(s.point));
  }
  RatMat basis = columns_to_matrix(points, d);
  auto inv = inverse(basis);
  if (!inv) throw Error("gauge: singular initial basis");
  RatMat binv = std::move(*inv);
  RatVec lambda = binv * x;
  for (Index i = 0; i < d; ++i) {
    bool flip = lambda(i) < 0;
    if (lambda(i) == 0) {
      for (Index j = 0; j < d; ++j) {
        if (binv(i, j) != 0) {
          flip = binv(i, j) < 0;
          break;
        }
      }
    }
    if (flip) {
      points[i] = -points[i];
      binv.row(i) = -binv.row(i);
      lambda(i) = -lambda(i);
    }
  }

  for (;;) {
    RatVec y = binv.colwise().sum().transpose();
    Support s = body.support(y);
    if (s.value <= 1) {
      cert.value = 0;
      for (Index i = 0; i < d; ++i) cert.value += lambda(i);
      cert.dual = std::move(y);
      cert.points = std::move(points);
      cert.weights.assign(lambda.data(), lambda.data() + d);
      return cert;
    }
    RatVec col = binv * s.point;
    Index leave = -1;
    for (Index i = 0; i < d; ++i) {
      if (col(i) <= 0) continue;
      if (leave < 0 || lex_ratio_less(lambda, binv, col, i, leave)) leave = i;
    }
    if (leave < 0) throw Error("gauge: unbounded decomposition");
    Rat piv = col(leave);
    binv.row(leave) /= piv;
    lambda(leave) /= piv;
    for (Index i = 0; i < d; ++i) {
      if (i == leave || col(i) == 0) continue;
      Rat f = col(i);
      binv.row(i) -= f * binv.row(leave);
      lambda(i) -= f * lambda(leave);
    }
    points[leave] = std::move(s.point);
  }
}

// ---------------------------------------------------------------------------

GeneratorBody::GeneratorBody(std::vector<RatVec> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error("not a norm: no generators");
  dim_ = generators_.front().size();
  for (const auto& g : generators_) {
    if (g.size() != dim_) throw DimensionMismatch("generator dimensions differ");
  }
}

Support GeneratorBody::support(const RatVec& y) const {
  if (y.size() != dim_) throw DimensionMismatch("support: dimension mismatch");
  Support best{Rat(-1), RatVec()};
  for (const auto& g : generators_) {
    Rat v = dot(g, y);
    Rat a = abs(v);
    if (a > best.value) {
      best.value = a;
      best.point = v < 0 ? RatVec(-g) : g;
    }
  }
  return best;
}

ScaledBody::ScaledBody(BodyPtr inner, Rat factor) : inner_(std::move(inner)), factor_(std::move(factor)) {
  if (factor_ <= 0) throw Error("scaled body: factor must be positive");
}

Support ScaledBody::support(const RatVec& y) const {
  Support s = inner_->support(y);
  s.value *= factor_;
  s.point *= factor_;
  return s;
}

Rat ScaledBody::gauge(const RatVec& x) const { return inner_->gauge(x) / factor_; }

EmbeddedBody::EmbeddedBody(BodyPtr inner, Index ambient, std::vector<Index> coords)
    : inner_(std::move(inner)), ambient_(ambient), coords_(std::move(coords)) {
  if (static_cast<Index>(coords_.size()) != inner_->dim()) throw DimensionMismatch("embedded body: coordinate count");
}

Support EmbeddedBody::support(const RatVec& y) const {
  Support s = inner_->support(gather(y, coords_));
  RatVec p = zeros(ambient_);
  for (std::size_t i = 0; i < coords_.size(); ++i) p(coords_[i]) = s.point(static_cast<Index>(i));
  s.point = std::move(p);
  return s;
}

HullUnionBody::HullUnionBody(std::vector<BodyPtr> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error("hull of an empty union");
  dim_ = parts_.front()->dim();
  for (const auto& p : parts_) {
    if (p->dim() != dim_) throw DimensionMismatch("hull: part dimensions differ");
  }
}

Support HullUnionBody::support(const RatVec& y) const {
  Support best = parts_.front()->support(y);
  for (std::size_t i = 1; i < parts_.size(); ++i) {
    Support s = parts_[i]->support(y);
    if (s.value > best.value) best = std::move(s);
  }
  return best;
}

MinkowskiSumBody::MinkowskiSumBody(BodyPtr a, BodyPtr b, Rat s, Rat t)
    : a_(std::move(a)), b_(std::move(b)), s_(std::move(s)), t_(std::move(t)) {
  if (a_->dim() != b_->dim()) throw DimensionMismatch("minkowski sum: dimensions differ");
  if (s_ < 0 || t_ < 0 || (s_ == 0 && t_ == 0)) throw Error("minkowski sum: need s, t >= 0, not both zero");
}

Support MinkowskiSumBody::support(const RatVec& y) const {
  Support out{Rat(0), zeros(dim())};
  if (s_ != 0) {
    Support sa = a_->support(y);
    out.value += s_ * sa.value;
    out.point += s_ * sa.point;
  }
  if (t_ != 0) {
    Support sb = b_->support(y);
    out.value += t_ * sb.value;
    out.point += t_ * sb.point;
  }
  return out;
}

// ---------------------------------------------------------------------------

QuadrantPolygon QuadrantPolygon::circle(int m) {
  if (m < 1) throw Error("circle polygon: need at least one edge");
  QuadrantPolygon q;
  for (int j = 0; j <= m; ++j) {
    Rat s = Rat(j) / m;
    Rat den = 1 + s * s;
    q.vertices.emplace_back((1 - s * s) / den, 2 * s / den);
  }
  for (int j = 0; j < m; ++j) {
    const auto& [u0, v0] = q.vertices[j];
    const auto& [u1, v1] = q.vertices[j + 1];
    // Solve n . p0 = n . p1 = 1.
    Rat det = u0 * v1 - u1 * v0;
    q.normals.emplace_back((v1 - v0) / det, (u0 - u1) / det);
  }
  return q;
}

Rat QuadrantPolygon::gauge(const Rat& u, const Rat& v) const {
  Rat best;
  for (const auto& [a, b] : normals) best = std::max(best, a * u + b * v);
  return best;
}

Rat QuadrantPolygon::min_radius_squared() const {
  Rat best = -1;
  for (const auto& [a, b] : normals) {
    Rat r = 1 / (a * a + b * b);
    if (best < 0 || r < best) best = r;
  }
  return best;
}

JoinBody::JoinBody(BodyPtr a, std::vector<Index> left, BodyPtr b, std::vector<Index> right,
                   std::shared_ptr<const QuadrantPolygon> q)
    : a_(std::move(a)), b_(std::move(b)), left_(std::move(left)), right_(std::move(right)), q_(std::move(q)) {
  if (static_cast<Index>(left_.size()) != a_->dim() || static_cast<Index>(right_.size()) != b_->dim())
    throw DimensionMismatch("join: coordinate count");
  dim_ = a_->dim() + b_->dim();
}

Support JoinBody::support(const RatVec& y) const {
  Support sa = a_->support(gather(y, left_));
  Support sb = b_->support(gather(y, right_));
  std::size_t best = 0;
  Rat best_value = -1;
  for (std::size_t j = 0; j < q_->vertices.size(); ++j) {
    const auto& [u, v] = q_->vertices[j];
    Rat val = u * sa.value + v * sb.value;
    if (val > best_value) {
      best_value = val;
      best = j;
    }
  }
  const auto& [u, v] = q_->vertices[best];
  RatVec p = zeros(dim_);
  for (std::size_t i = 0; i < left_.size(); ++i) p(left_[i]) = u * sa.point(static_cast<Index>(i));
  for (std::size_t i = 0; i < right_.size(); ++i) p(right_[i]) = v * sb.point(static_cast<Index>(i));
  return {best_value, std::move(p)};
}

Rat JoinBody::gauge(const RatVec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("gauge: dimension mismatch");
  return q_->gauge(a_->gauge(gather(x, left_)), b_->gauge(gather(x, right_)));
}

std::vector<RatVec> JoinBody::combine(const std::vector<RatVec>& left_points,
                                      const std::vector<RatVec>& right_points) const {
  std::vector<RatVec> out;
  auto place = [&](const RatVec& a, const Rat& u, const RatVec* b, const Rat& v) {
    RatVec p = zeros(dim_);
    for (std::size_t i = 0; i < left_.size(); ++i) p(left_[i]) = u * a(static_cast<Index>(i));
    if (b) {
      for (std::size_t i = 0; i < right_.size(); ++i) p(right_[i]) = v * (*b)(static_cast<Index>(i));
    }
    out.push_back(std::move(p));
  };
  const RatVec zero_left = zeros(a_->dim());
  for (const auto& [u, v] : q_->vertices) {
    if (v == 0) {
      for (const auto& a : left_points) place(a, u, nullptr, v);
    } else if (u == 0) {
      for (const auto& b : right_points) place(zero_left, u, &b, v);
    } else {
      for (const auto& a : left_points) {
        for (const auto& b : right_points) {
          place(a, u, &b, v);
          RatVec nb = -b;
          place(a, u, &nb, v);
        }
      }
    }
  }
  return out;
}

RatVec gather(const RatVec& x, const std::vector<Index>& coords) {
  RatVec out(static_cast<Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) out(static_cast<Index>(i)) = x(coords[i]);
  return out;
}

}  // namespace normforge
