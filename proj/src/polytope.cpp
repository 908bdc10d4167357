#include "normforge/polytope.hpp"

#include "normforge/linalg.hpp"

#include <algorithm>

namespace normforge {

namespace {

constexpr std::size_t kCombinationCap = 4'000'000;

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

void sort_unique(std::vector<RatVec>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end(), [](const RatVec& a, const RatVec& b) { return equal(a, b); }), v.end());
}

// Points y with |rows . y| <= 1 for all rows that are the unique solution of
// some square system rows_S y = signs.
std::vector<RatVec> polar_vertices(const std::vector<RatVec>& rows, Index k) {
  const std::size_t n = rows.size();
  const std::size_t kk = static_cast<std::size_t>(k);
  if (binomial(n, kk) * double(std::size_t(1) << (kk - 1)) > double(kCombinationCap))
    throw Error("vertex enumeration exceeds the combination cap (dimension " + std::to_string(k) + ", " +
                std::to_string(n) + " constraints)");
  std::vector<RatVec> out;
  for_each_subset(n, kk, [&](const std::vector<std::size_t>& s) {
    RatMat m(k, k);
    for (Index i = 0; i < k; ++i) m.row(i) = rows[s[i]].transpose();
    auto inv = inverse(m);
    if (!inv) return;
    for (std::size_t mask = 0; mask < (std::size_t(1) << (kk - 1)); ++mask) {
      RatVec sig(k);
      sig(0) = 1;
      for (Index i = 1; i < k; ++i) sig(i) = (mask >> (i - 1)) & 1 ? -1 : 1;
      RatVec y = *inv * sig;
      bool ok = true;
      for (const auto& r : rows) {
        if (abs(r.dot(y)) > 1) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(sign_normalized(y));
    }
  });
  sort_unique(out);
  return out;
}

}  // namespace

std::optional<std::vector<RatVec>> extreme_points(const std::vector<RatVec>& points, Index dim) {
  std::vector<RatVec> cand;
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionMismatch("generator has dimension " + std::to_string(p.size()) +
                                                 ", expected " + std::to_string(dim));
    if (!is_zero(p)) cand.push_back(sign_normalized(p));
  }
  sort_unique(cand);
  if (rank(cand) < dim) return std::nullopt;
  std::size_t i = 0;
  while (i < cand.size()) {
    std::vector<RatVec> others;
    others.reserve(cand.size() - 1);
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (j != i) others.push_back(cand[j]);
    }
    bool redundant = false;
    if (!others.empty() && rank(others) == dim) {
      GeneratorBody body(others);
      redundant = body.gauge(cand[i]) <= 1;
    }
    if (redundant) {
      cand = std::move(others);
    } else {
      ++i;
    }
  }
  return cand;
}

PolytopeBall::PolytopeBall(const std::vector<RatVec>& generators) {
  if (generators.empty()) throw Error("not a norm: empty generator list");
  dim_ = generators.front().size();
  if (dim_ < 1) throw Error("not a norm: dimension must be positive");
  auto ext = extreme_points(generators, dim_);
  if (!ext) throw Error("not a norm: generators do not span R^" + std::to_string(dim_));
  generators_ = std::move(*ext);
  body_ = std::make_shared<GeneratorBody>(generators_);
}

Rat PolytopeBall::gauge(const RatVec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("gauge: vector has dimension " + std::to_string(x.size()) +
                                                ", ball has dimension " + std::to_string(dim_));
  return body_->gauge(x);
}

std::vector<RatVec> PolytopeBall::facets() const { return polar_vertices(generators_, dim_); }

PolytopeBall PolytopeBall::projection(Index k) const {
  if (k < 1 || k > dim_) throw Error("projection: k out of range");
  std::vector<RatVec> g;
  for (const auto& v : generators_) g.push_back(v.head(k));
  return PolytopeBall(g);
}

PolytopeBall PolytopeBall::section(Index k) const {
  if (k < 1 || k > dim_) throw Error("section: k out of range");
  if (k == dim_) return *this;
  // Monotone fast path: if the projection stays inside the ball it equals
  // the section.
  PolytopeBall proj = projection(k);
  bool inside = true;
  for (const auto& g : proj.generators()) {
    RatVec padded = zeros(dim_);
    padded.head(k) = g;
    if (!contains(padded)) {
      inside = false;
      break;
    }
  }
  if (inside) return proj;
  std::vector<RatVec> normals;
  for (const auto& a : facets()) {
    RatVec h = a.head(k);
    if (!is_zero(h)) normals.push_back(h);
  }
  sort_unique(normals);
  return PolytopeBall(vertices_from_halfspaces(normals, k));
}

bool PolytopeBall::operator==(const PolytopeBall& other) const {
  if (dim_ != other.dim_ || generators_.size() != other.generators_.size()) return false;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!equal(generators_[i], other.generators_[i])) return false;
  }
  return true;
}

std::vector<RatVec> vertices_from_halfspaces(const std::vector<RatVec>& normals, Index k) {
  return polar_vertices(normals, k);
}

PolytopeBall minkowski_sum(const PolytopeBall& a, const PolytopeBall& b, const Rat& s, const Rat& t) {
  if (a.dim() != b.dim()) throw DimensionMismatch("minkowski_sum: dimensions differ");
  if (s < 0 || t < 0 || (s == 0 && t == 0)) throw Error("minkowski_sum: need s, t >= 0, not both zero");
  std::vector<RatVec> cand;
  if (t == 0) {
    for (const auto& g : a.generators()) cand.push_back(s * g);
  } else if (s == 0) {
    for (const auto& g : b.generators()) cand.push_back(t * g);
  } else {
    for (const auto& ga : a.generators()) {
      for (const auto& gb : b.generators()) {
        cand.push_back(s * ga + t * gb);
        cand.push_back(s * ga - t * gb);
      }
    }
  }
  return PolytopeBall(cand);
}

PolytopeBall cube(Index d) {
  std::vector<RatVec> g;
  for (std::size_t mask = 0; mask < (std::size_t(1) << (d - 1)); ++mask) {
    RatVec v(d);
    v(0) = 1;
    for (Index i = 1; i < d; ++i) v(i) = (mask >> (i - 1)) & 1 ? -1 : 1;
    g.push_back(v);
  }
  return PolytopeBall(g);
}

PolytopeBall cross_polytope(Index d) {
  std::vector<RatVec> g;
  for (Index i = 0; i < d; ++i) g.push_back(unit(d, i));
  return PolytopeBall(g);
}

}  // namespace normforge
