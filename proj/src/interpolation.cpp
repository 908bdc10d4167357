#include "normforge/interpolation.hpp"

#include "normforge/linalg.hpp"
#include "normforge/lp.hpp"
#include "normforge/normed_space.hpp"

#include <algorithm>
#include <cmath>

namespace normforge {

HalfspaceBody::HalfspaceBody(std::vector<RatVec> normals, Index dim) : normals_(std::move(normals)), dim_(dim) {
  for (const auto& a : normals_) {
    if (a.size() != dim_) throw DimensionMismatch("halfspace normal has the wrong dimension");
  }
  if (rank(normals_) != dim_) throw Error("not a norm: halfspaces do not bound a body");
}

Support HalfspaceBody::support(const RatVec& y) const {
  if (y.size() != dim_) throw DimensionMismatch("support direction has the wrong dimension");
  const Index m = static_cast<Index>(normals_.size());
  const Index k = dim_;
  // z = p - q, |a_i . z| <= 1 with slacks s, t.
  RatMat A = RatMat::Zero(2 * m, 2 * k + 2 * m);
  RatVec b(2 * m), c = RatVec::Zero(2 * k + 2 * m);
  for (Index i = 0; i < m; ++i) {
    const RatVec& a = normals_[static_cast<std::size_t>(i)];
    for (Index j = 0; j < k; ++j) {
      A(i, j) = a(j);
      A(i, k + j) = -a(j);
      A(m + i, j) = -a(j);
      A(m + i, k + j) = a(j);
    }
    A(i, 2 * k + i) = 1;
    A(m + i, 2 * k + m + i) = 1;
    b(i) = 1;
    b(m + i) = 1;
  }
  for (Index j = 0; j < k; ++j) {
    c(j) = -y(j);
    c(k + j) = y(j);
  }
  auto r = minimize<Rat>(A, b, c);
  if (r.status != LpStatus::Optimal) throw Error("halfspace body: support LP failed");
  RatVec p(k);
  for (Index j = 0; j < k; ++j) p(j) = r.x(j) - r.x(k + j);
  return {-r.objective, p};
}

Rat HalfspaceBody::gauge(const RatVec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("vector has the wrong dimension");
  Rat g;
  for (const auto& a : normals_) g = std::max(g, abs(a.dot(x)));
  return g;
}

InterpolationSpec::InterpolationSpec(BodyPtr x_ball, PolytopeBall w, std::string x_description)
    : x_(std::move(x_ball)), w_(std::move(w)), x_description_(std::move(x_description)) {
  if (!x_) throw Error("interpolation: missing X");
  if (x_->dim() != w_.dim()) throw DimensionMismatch("interpolation: X and W have different dimensions");
  w_body_ = std::make_shared<GeneratorBody>(w_.generators());
}

InterpolationSpec InterpolationSpec::polytope(const PolytopeBall& x, PolytopeBall w) {
  return InterpolationSpec(std::make_shared<GeneratorBody>(x.generators()), std::move(w));
}

namespace {

double log_binomial_bound(std::size_t m, std::size_t k) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += std::log2(double(m - i)) - std::log2(double(i + 1));
  return s;
}

}  // namespace

InterpolationSpec InterpolationSpec::tree(const FiniteTree& tree) {
  auto facets = e_ball_facets(tree);
  const Index k = static_cast<Index>(tree.size());
  BodyPtr e;
  std::string how;
  // Enumerate vertices when the k-subsets of facets are few; otherwise LP supports.
  if (facets.size() <= 64 && log_binomial_bound(facets.size(), static_cast<std::size_t>(k)) <= 15) {
    e = std::make_shared<GeneratorBody>(vertices_from_halfspaces(facets, k));
    how = "tree-E (vertices)";
  } else {
    e = std::make_shared<HalfspaceBody>(facets, k);
    how = "tree-E (halfspaces)";
  }
  InterpolationSpec spec(e, phi_ball(tree), how);
  spec.tree_ = tree;
  return spec;
}

BodyPtr InterpolationSpec::level_body(int n) const {
  if (n < 1) throw Error("level_norm: n must be positive");
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->levels[n];
  if (!slot) slot = std::make_shared<MinkowskiSumBody>(w_body_, x_, pow2(n), pow2(-n));
  return slot;
}

namespace {

// min L over x = W lambda + b with |lambda|_1 <= s L and |c_j . b| <= t L.
Rat sum_gauge_lp(const std::vector<RatVec>& w, const std::vector<RatVec>& normals, const Rat& s, const Rat& t,
                 const RatVec& x) {
  const Index g = static_cast<Index>(w.size());
  const Index m = static_cast<Index>(normals.size());
  const Index cols = 2 * g + 1 + 1 + 2 * m;  // p, q, L, slack of the l1 row, slacks of the facet rows
  const Index L = 2 * g;
  RatMat A = RatMat::Zero(1 + 2 * m, cols);
  RatVec b = RatVec::Zero(1 + 2 * m), c = RatVec::Zero(cols);
  for (Index i = 0; i < 2 * g; ++i) A(0, i) = 1;
  A(0, L) = -s;
  A(0, L + 1) = 1;
  for (Index j = 0; j < m; ++j) {
    const RatVec& a = normals[static_cast<std::size_t>(j)];
    for (int sign : {1, -1}) {
      const Index row = 1 + 2 * j + (sign == 1 ? 0 : 1);
      for (Index i = 0; i < g; ++i) {
        Rat v = sign * a.dot(w[static_cast<std::size_t>(i)]);
        A(row, i) = v;
        A(row, g + i) = -v;
      }
      A(row, L) = t;
      A(row, L + 2 + 2 * j + (sign == 1 ? 0 : 1)) = -1;
      b(row) = sign * a.dot(x);
      if (b(row) < 0) {
        A.row(row) *= Rat(-1);
        b(row) = -b(row);
      }
    }
  }
  c(L) = 1;
  auto r = minimize<Rat>(A, b, c);
  if (r.status != LpStatus::Optimal) throw Error("level norm: LP failed");
  return r.objective;
}

}  // namespace

Rat InterpolationSpec::level_norm(int n, const RatVec& x) const {
  if (x.size() != dim()) throw DimensionMismatch("vector has the wrong dimension");
  if (n < 1) throw Error("level_norm: n must be positive");
  if (is_zero(x)) return Rat(0);
  if (auto h = dynamic_cast<const HalfspaceBody*>(x_.get())) {
    return sum_gauge_lp(w_.generators(), h->normals(), pow2(n), pow2(-n), x);
  }
  return level_body(n)->gauge(x);
}

namespace {

constexpr int kMaxLevels = 400;

InterpValue finish(const Rat& partial, const Rat& tail, int levels, const Rat& eps) {
  InterpValue v;
  v.levels = levels;
  v.partial_square = partial;
  v.tail_bound = tail;
  v.value = {sqrt_of(partial, eps / 4).lo, sqrt_of(partial + tail, eps / 4).hi};
  if (v.value.lo < 0) v.value.lo = 0;
  return v;
}

}  // namespace

InterpValue interpolation_norm_levels(const InterpolationSpec& spec, const RatVec& x, int levels, const Rat& eps) {
  if (eps <= 0) throw Error("interpolation: eps must be positive");
  if (levels < 1 || levels > kMaxLevels) throw Error("interpolation: level count out of range");
  Rat g = spec.w_gauge(x);
  Rat s;
  for (int n = 1; n <= levels; ++n) {
    Rat l = spec.level_norm(n, x);
    s += l * l;
  }
  return finish(s, pow2(-2 * levels) * g * g / 3, levels, eps);
}

InterpValue interpolation_norm(const InterpolationSpec& spec, const RatVec& x, const Rat& eps) {
  if (eps <= 0) throw Error("interpolation: eps must be positive");
  if (x.size() != spec.dim()) throw DimensionMismatch("vector has the wrong dimension");
  Rat g = spec.w_gauge(x);
  if (g == 0) return finish(Rat(0), Rat(0), 0, eps);
  Rat s;
  for (int n = 1; n <= kMaxLevels; ++n) {
    Rat l = spec.level_norm(n, x);
    s += l * l;
    Rat tail = pow2(-2 * n) * g * g / 3;
    // sqrt(s + tail) - sqrt(s) <= tail / (2 sqrt(s)) <= tail / (2 l)
    if (tail <= eps * l) {
      InterpValue v = finish(s, tail, n, eps);
      if (v.value.width() <= eps) return v;
    }
  }
  throw Error("interpolation: series did not reach the requested width");
}

CertInterval interpolation_constant(const Rat& eps) {
  if (eps <= 0) throw Error("interpolation: eps must be positive");
  Rat s;
  for (int n = 1; n <= kMaxLevels; ++n) {
    Rat d = pow2(n) + pow2(-n);
    s += 1 / (d * d);
    Rat tail = pow2(-2 * n) / 3;
    if (tail <= eps / 4) {
      CertInterval c{sqrt_of(s, eps / 4).lo, sqrt_of(s + tail, eps / 4).hi};
      if (c.width() <= eps) return c;
    }
  }
  throw Error("interpolation: constant did not reach the requested width");
}

namespace {

RatVec project(const std::vector<Index>& coords, const RatVec& x) {
  RatVec p = zeros(x.size());
  for (Index i : coords) p(i) = x(i);
  return p;
}

RatVec reduce(const std::vector<Index>& coords, const RatVec& x) {
  RatVec r(static_cast<Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) r(static_cast<Index>(i)) = x(coords[i]);
  return r;
}

bool projection_contracts_x(const InterpolationSpec& spec, const std::vector<Index>& coords) {
  const Body& x = *spec.x_ball();
  if (auto h = dynamic_cast<const HalfspaceBody*>(&x)) {
    // P B inside B iff the support of P a is at most 1 for every normal a.
    for (const auto& a : h->normals()) {
      if (x.support(project(coords, a)).value > 1) return false;
    }
    return true;
  }
  auto g = dynamic_cast<const GeneratorBody*>(&x);
  if (!g) throw Error("interpolation: unsupported X body");
  for (const auto& v : g->generators()) {
    if (x.gauge(project(coords, v)) > 1) return false;
  }
  return true;
}

// Generators of P B_X in the coordinates of PX; P must contract B_X, so
// that P B_X is the section of B_X.
std::vector<RatVec> projected_x_generators(const InterpolationSpec& spec, const std::vector<Index>& coords) {
  const Body& x = *spec.x_ball();
  if (auto h = dynamic_cast<const HalfspaceBody*>(&x)) {
    std::vector<RatVec> normals;
    for (const auto& a : h->normals()) {
      RatVec r = reduce(coords, a);
      if (!is_zero(r)) normals.push_back(r);
    }
    return vertices_from_halfspaces(normals, static_cast<Index>(coords.size()));
  }
  std::vector<RatVec> out;
  for (const auto& v : dynamic_cast<const GeneratorBody&>(x).generators()) {
    RatVec r = reduce(coords, v);
    if (!is_zero(r)) out.push_back(r);
  }
  return out;
}

enum class Contraction { Holds, Violated, Undecided };

Contraction decide_contraction(const InterpolationSpec& spec, const RatVec& px, const RatVec& x, const Rat& eps) {
  for (Rat e = eps; e >= eps / 1000000; e /= 1000) {
    CertInterval a = interpolation_norm(spec, px, e).value;
    CertInterval b = interpolation_norm(spec, x, e).value;
    if (a.hi <= b.lo) return Contraction::Holds;
    if (a.lo > b.hi) return Contraction::Violated;
  }
  // Levelwise. The caller has certified P B_X in B_X and P W in W, so P maps
  // every level ball into itself; the first levels are checked exactly.
  const int levels = 40;
  for (int n = 1; n <= levels; ++n) {
    Rat p = spec.level_norm(n, px), q = spec.level_norm(n, x);
    if (p > q) return Contraction::Violated;
  }
  return Contraction::Holds;
}

}  // namespace

InterpProjReport verify_interpproj(const InterpolationSpec& spec, const std::vector<Index>& coords,
                                   const std::vector<RatVec>& vectors, const Rat& eps) {
  InterpProjReport r;
  for (Index i : coords) {
    if (i < 0 || i >= spec.dim()) throw Error("projection coordinate out of range");
  }
  if (coords.empty()) {
    r.failure = "empty projection";
    return r;
  }
  r.contractive_x = projection_contracts_x(spec, coords);
  r.w_invariant = true;
  for (const auto& g : spec.w().generators()) {
    if (spec.w_gauge(project(coords, g)) > 1) {
      r.w_invariant = false;
      break;
    }
  }
  if (!r.contractive_x || !r.w_invariant) {
    r.failure = !r.contractive_x ? "P does not contract the ball of X" : "P does not map W into W";
    return r;
  }
  std::vector<RatVec> pw;
  for (const auto& g : spec.w().generators()) {
    RatVec v = reduce(coords, g);
    if (!is_zero(v)) pw.push_back(v);
  }
  auto px = projected_x_generators(spec, coords);
  r.scale_law_applies = PolytopeBall(pw) == PolytopeBall(px);

  std::optional<CertInterval> c;
  if (r.scale_law_applies) c = interpolation_constant(eps / 4);
  for (const auto& v : vectors) {
    if (v.size() != spec.dim()) throw DimensionMismatch("vector has the wrong dimension");
    RatVec p = project(coords, v);
    ++r.checked;
    if (!equal(p, v)) {
      switch (decide_contraction(spec, p, v, eps)) {
        case Contraction::Holds: break;
        case Contraction::Violated:
          ++r.violations;
          if (!r.witness) r.witness = v;
          break;
        case Contraction::Undecided: ++r.undecided; break;
      }
    }
    if (!c || is_zero(p)) continue;
    Rat norm = spec.x_norm(p);
    const int exact_levels = 8;
    for (int n = 1; n <= exact_levels; ++n) {
      if (spec.level_norm(n, p) * (pow2(n) + pow2(-n)) != norm) r.ratio_matches = false;
    }
    r.exact_levels = exact_levels;
    CertInterval value = interpolation_norm(spec, p, eps * norm / 4).value;
    CertInterval ratio{value.lo / norm, value.hi / norm};
    if (!ratio.overlaps(*c)) r.ratio_matches = false;
    if (!r.ratio) {
      r.ratio = ratio;
    } else {
      r.ratio->lo = std::max(r.ratio->lo, ratio.lo);
      r.ratio->hi = std::min(r.ratio->hi, ratio.hi);
      if (r.ratio->lo > r.ratio->hi) r.ratio_matches = false;
    }
  }
  return r;
}

NormValue InterpolationNorm::eval(const RatVec& x, const Rat& eps) const {
  return NormValue::interval(interpolation_norm(*spec_, x, eps).value);
}

InterpolationSpec build_A(const FiniteTree& tree) { return InterpolationSpec::tree(tree); }

std::vector<Index> branch_coords(const FiniteTree& tree, const TreeNode& leaf) {
  std::vector<Index> out = tree.chain(leaf);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> subtree_coords(const FiniteTree& tree, const std::vector<TreeNode>& subtree) {
  if (!is_subtree(tree, subtree)) throw Error("not a subtree: it must be closed under initial segments");
  std::vector<Index> out;
  for (const auto& node : subtree) out.push_back(tree.index_of(node));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool basis_monotone(const InterpolationSpec& spec) {
  for (Index k = 1; k < spec.dim(); ++k) {
    std::vector<Index> coords(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) coords[static_cast<std::size_t>(i)] = i;
    if (!projection_contracts_x(spec, coords)) return false;
    for (const auto& g : spec.w().generators()) {
      if (spec.w_gauge(project(coords, g)) > 1) return false;
    }
  }
  return true;
}

}  // namespace normforge
