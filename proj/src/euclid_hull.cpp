#include "normforge/euclid_hull.hpp"

#include "normforge/linalg.hpp"

namespace normforge {

namespace {

bool is_subset(const std::vector<std::size_t>& a, const RatVec& sa, const std::vector<std::size_t>& b,
               const RatVec& sb) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    while (j < b.size() && b[j] < a[i]) ++j;
    if (j == b.size() || b[j] != a[i] || sb(static_cast<Index>(j)) != sa(static_cast<Index>(i))) return false;
  }
  return true;
}

}  // namespace

EuclidHull::EuclidHull(std::vector<RatVec> vertices, Rat radius_squared)
    : vertices_(std::move(vertices)) {
  if (radius_squared <= 0) throw Error("euclidean hull: radius must be positive");
  if (vertices_.empty()) throw Error("euclidean hull: no vertices");
  dim_ = vertices_.front().size();
  dual_radius2_ = 1 / radius_squared;
  const std::size_t n = vertices_.size();

  // Every active set of independent rows with every sign pattern.
  std::vector<std::size_t> rows;
  auto visit = [&](auto&& self, std::size_t start) -> void {
    if (!rows.empty()) {
      RatMat a = rows_to_matrix([&] {
        std::vector<RatVec> r;
        for (auto i : rows) r.push_back(vertices_[i]);
        return r;
      }(), dim_);
      if (rank(a) < static_cast<Index>(rows.size())) return;
      RatMat gram_inv = *inverse(RatMat(a * a.transpose()));
      RatMat pinv = a.transpose() * gram_inv;
      RatMat proj = RatMat::Identity(dim_, dim_) - pinv * a;
      const Index k = static_cast<Index>(rows.size());
      for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        Face f;
        f.rows = rows;
        f.signs = RatVec(k);
        for (Index i = 0; i < k; ++i) f.signs(i) = (mask >> i) & 1 ? -1 : 1;
        f.projector = proj;
        f.y0 = pinv * f.signs;
        f.y0_norm2 = squared_norm(f.y0);
        f.y0_feasible = f.y0_norm2 <= dual_radius2_ && linear_ok(f.y0);
        faces_.push_back(std::move(f));
      }
    } else {
      Face f;
      f.signs = RatVec(0);
      f.projector = RatMat::Identity(dim_, dim_);
      f.y0 = zeros(dim_);
      f.y0_norm2 = 0;
      f.y0_feasible = true;
      faces_.push_back(std::move(f));
    }
    if (static_cast<Index>(rows.size()) == dim_) return;
    for (std::size_t i = start; i < n; ++i) {
      rows.push_back(i);
      self(self, i + 1);
      rows.pop_back();
    }
  };
  visit(visit, 0);
}

bool EuclidHull::linear_ok(const RatVec& y) const {
  for (const auto& v : vertices_) {
    if (abs(v.dot(y)) > 1) return false;
  }
  return true;
}

QuadSurd EuclidHull::gauge(const RatVec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("gauge: dimension mismatch");
  QuadSurd best = QuadSurd::rational(0);
  for (const auto& f : faces_) {
    RatVec w = f.projector * x;
    Rat w2 = squared_norm(w);
    if (w2 == 0) {
      // The objective is constant on the active affine set; it counts when
      // the set meets the feasible region, which happens iff some extension
      // of the active set has a feasible least-norm point.
      bool reachable = false;
      for (const auto& g : faces_) {
        if (g.y0_feasible && is_subset(f.rows, f.signs, g.rows, g.signs)) {
          reachable = true;
          break;
        }
      }
      if (reachable) {
        QuadSurd c = QuadSurd::rational(x.dot(f.y0));
        if (compare(c, best) > 0) best = c;
      }
      continue;
    }
    if (f.y0_norm2 > dual_radius2_) continue;
    // y = y0 + mu w with mu^2 = (R^2 - |y0|^2) / |w|^2.
    Rat mu2 = (dual_radius2_ - f.y0_norm2) / w2;
    bool ok = true;
    for (const auto& v : vertices_) {
      Rat p = v.dot(f.y0);
      Rat q = v.dot(w);
      if (sign_linear_surd(p - 1, q, mu2) > 0 || sign_linear_surd(p + 1, q, mu2) < 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    QuadSurd c{x.dot(f.y0), (dual_radius2_ - f.y0_norm2) * w2};
    if (compare(c, best) > 0) best = c;
  }
  return best;
}

CertInterval EuclidHull::gauge_interval(const RatVec& x, const Rat& eps) const {
  if (eps <= 0) throw Error("gauge_interval: eps must be positive");
  return gauge(x).enclose(eps);
}

}  // namespace normforge
