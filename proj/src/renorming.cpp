#include "normforge/renorming.hpp"

#include "normforge/catalog.hpp"
#include "normforge/euclid_hull.hpp"
#include "normforge/normed_space.hpp"
#include "normforge/polytope.hpp"

#include <map>

namespace normforge {

std::string to_string(RenormKind k) { return k == RenormKind::I ? "I" : "II"; }

RenormKind parse_renorm_kind(const std::string& s) {
  if (s == "I") return RenormKind::I;
  if (s == "II") return RenormKind::II;
  throw Error("unknown renorming '" + s + "' (expected I or II)");
}

Rat pi_weight(std::int64_t n, std::int64_t k) {
  return pow2(-4 * static_cast<int>(pi_inverse(n, k)));
}

namespace {

const EuclidHull& rho0_body() {
  static const EuclidHull hull(cube(3).generators(), Rat(2));
  return hull;
}

}  // namespace

QuadSurd rho0(const Rat& r, const Rat& s, const Rat& t) {
  return rho0_body().gauge(make_vec({abs(r), abs(s), abs(t)}));
}

QuadSurd rho_exact(const Rat& r, const Rat& s, const Rat& t) {
  return rho0(r, s, t).scaled(Rat(1, 2)).plus((abs(r) + abs(s)) / 4);
}

CertInterval rho(const Rat& r, const Rat& s, const Rat& t, const Rat& eps) {
  if (eps <= 0) throw Error("rho: eps must be positive");
  return rho_exact(r, s, t).enclose(eps);
}

CertInterval rho(const CertInterval& r, const CertInterval& s, const CertInterval& t, const Rat& eps) {
  if (eps <= 0) throw Error("rho: eps must be positive");
  if (r.lo < 0 || s.lo < 0 || t.lo < 0) throw Error("rho: interval arguments must be nonnegative");
  CertInterval lo = rho(r.lo, s.lo, t.lo, eps / 2);
  CertInterval hi = rho(r.hi, s.hi, t.hi, eps / 2);
  return {lo.lo, hi.hi};
}

RenormFrame::RenormFrame(std::shared_ptr<const EmbeddingFrame> base) : base_(std::move(base)) {
  if (!base_) throw Error("renorm: missing frame");
  const auto& layout = base_->layout();
  std::map<std::pair<std::int64_t, std::int64_t>, Index> where;
  for (std::size_t i = 0; i < layout.size(); ++i) where[layout[i]] = static_cast<Index>(i);
  for (const auto& [n, k] : layout) {
    alpha_weights_.push_back(pi_weight(n, k));
    beta_weights_.push_back(pi_weight(n + 1, k));
    auto it = where.find({n + 1, k});
    successor_.push_back(it == where.end() ? std::nullopt : std::optional<Index>(it->second));
  }
}

std::vector<Rat> RenormFrame::beta_differences(const RatVec& f) const {
  if (f.size() != dim()) throw DimensionMismatch("vector is not in F_D");
  std::vector<Rat> out;
  out.reserve(successor_.size());
  for (std::size_t i = 0; i < successor_.size(); ++i) {
    Rat next = successor_[i] ? f(*successor_[i]) : Rat(0);
    out.push_back(f(static_cast<Index>(i)) - 2 * next);
  }
  return out;
}

Rat RenormFrame::beta_square(const RatVec& f) const {
  auto diff = beta_differences(f);
  Rat s;
  for (std::size_t i = 0; i < diff.size(); ++i) s += beta_weights_[i] * diff[i] * diff[i];
  return s;
}

Rat RenormFrame::alpha_square(const RatVec& f) const {
  if (f.size() != dim()) throw DimensionMismatch("vector is not in F_D");
  Rat s;
  for (std::size_t i = 0; i < alpha_weights_.size(); ++i) {
    const Rat& c = f(static_cast<Index>(i));
    s += alpha_weights_[i] * c * c;
  }
  return s;
}

Rat RenormFrame::norm_i_square(const RatVec& f) const {
  Rat n = norm(f);
  return n * n + pow2(-7) * beta_square(f);
}

CertInterval RenormFrame::norm_ii(const RatVec& f, const Rat& eps) const {
  if (eps <= 0) throw Error("norm_ii: eps must be positive");
  Rat r = norm(f);
  CertInterval s = sqrt_of(norm_i_square(f), eps / 4);
  CertInterval t = sqrt_of(alpha_square(f), eps / 4);
  return rho(CertInterval::point(r), s, t, eps / 4);
}

std::vector<Rat> RenormFrame::u_beta_differences(const RatVec& x, std::int64_t blocks) const {
  if (x.size() != base_->xdim()) throw DimensionMismatch("vector is not in X");
  std::vector<Rat> out;
  for (std::int64_t n = 1; n <= blocks; ++n) {
    for (Index k = 0; k < x.size(); ++k) {
      Rat here = pow2(-static_cast<int>(n - 1)) * x(k);
      Rat next = pow2(-static_cast<int>(n)) * x(k);
      out.push_back(here - 2 * next);
    }
  }
  return out;
}

CertInterval RenormFrame::u_alpha_square(const RatVec& x, std::int64_t blocks) const {
  if (x.size() != base_->xdim()) throw DimensionMismatch("vector is not in X");
  if (blocks < 1) throw Error("u_alpha_square: blocks must be positive");
  Rat s, top;
  for (std::int64_t n = 1; n <= blocks; ++n) {
    for (Index k = 0; k < x.size(); ++k) {
      Rat c = x(k) * x(k);
      s += pi_weight(n, k + 1) * pow2(-2 * static_cast<int>(n - 1)) * c;
      if (c > top) top = c;
    }
  }
  const int b = static_cast<int>(blocks);
  Rat tail = top * pow2(-2 * b) * pow2(-4 * b) / 15;
  return {Rat(3, 4) * s, Rat(3, 4) * (s + tail)};
}

CertInterval RenormFrame::u_norm_bounds(const RatVec& x) const {
  const PolytopeBall& ball = base_->space().ball();
  Rat lower = ball.gauge(base_->tu(x));
  Rat g = ball.gauge(x);
  // ||Ux||_{l2(X)}^2 = (3/4) sum_n 4^-(n-1) ||x||^2
  Rat upper_square = Rat(3, 4) / (1 - Rat(1, 4)) * g * g;
  Rat upper;
  if (!exact_sqrt(upper_square, upper)) upper = sqrt_of(upper_square, Rat(1, 1000000000000LL)).hi;
  return {lower, upper};
}

CertInterval RenormFrame::u_norm_ii(const RatVec& x, const Rat& eps) const {
  CertInterval r = u_norm_bounds(x);
  CertInterval a2 = u_alpha_square(x, std::max<std::int64_t>(base_->block_count(), 8));
  CertInterval t{sqrt_of(a2.lo, eps / 4).lo, sqrt_of(a2.hi, eps / 4).hi};
  return rho(r, r, t, eps / 2);
}

bool sqrt_sum_holds(const Rat& a, const Rat& b, const Rat& c, const Rat& e) {
  // sqrt(a) >= sqrt(b) + c sqrt(e)  <=>  a - b - c^2 e >= 2 c sqrt(b e)
  Rat m = a - b - c * c * e;
  if (m < 0) return false;
  return m * m >= 4 * c * c * b * e;
}

bool further_i_holds(const RenormFrame& frame, const RatVec& f, Index d) {
  RatVec p = partial_sum(d, f);
  Rat c = pow2(-static_cast<int>(2 * d + 7));
  return sqrt_sum_holds(frame.norm_i_square(f), frame.norm_i_square(p), c, frame.norm_i_square(f - p));
}

CertifiedCheck further_ii_check(const RenormFrame& frame, const RatVec& f, Index d, const Rat& eps,
                                const Rat& min_eps) {
  RatVec p = partial_sum(d, f);
  RatVec q = f - p;
  Rat c = pow2(-static_cast<int>(2 * d + 7));
  CertifiedCheck out;
  if (is_zero(q)) {
    out.holds = out.decided = true;
    out.slack = CertInterval::point(0);
    return out;
  }
  for (Rat e = eps;; e /= 1024) {
    CertInterval lhs = frame.norm_ii(f, e);
    CertInterval rhs = frame.norm_ii(p, e) + c * frame.norm_ii(q, e);
    out.slack = lhs - rhs;
    if (out.slack.lo >= 0 || out.slack.hi < 0) {
      out.decided = true;
      out.holds = out.slack.lo >= 0;
      return out;
    }
    if (e <= min_eps) return out;
  }
}

namespace {

bool all_zero(const std::vector<Rat>& v) {
  for (const auto& c : v) {
    if (c != 0) return false;
  }
  return true;
}

// Exact ||f||_II when ||f||_I and alpha(f) are rational.
std::optional<QuadSurd> exact_norm_ii(const RenormFrame& frame, const RatVec& f) {
  Rat s, t;
  if (!exact_sqrt(frame.norm_i_square(f), s) || !exact_sqrt(frame.alpha_square(f), t)) return std::nullopt;
  return rho_exact(frame.norm(f), s, t);
}

// ||Ux||_II when rho is flat over the alpha enclosure, as on the segment
// [(1,1,-1),(1,1,1)].
std::optional<Rat> exact_u_norm_ii(const RenormFrame& frame, const RatVec& x) {
  CertInterval r = frame.u_norm_bounds(x);
  if (r.lo != r.hi) return std::nullopt;
  CertInterval a2 = frame.u_alpha_square(x, std::max<std::int64_t>(frame.base().block_count(), 8));
  Rat t = sqrt_of(a2.hi, Rat(1, 1000000)).hi;
  if (compare(rho_exact(r.lo, r.lo, Rat(0)), r.lo) != 0) return std::nullopt;
  if (compare(rho_exact(r.lo, r.lo, t), r.lo) != 0) return std::nullopt;
  return r.lo;
}

}  // namespace

RenormSegmentReport segment_check(const RenormFrame& frame, const RatVec& u, const RatVec& v, RenormKind which) {
  if (equal(u, v)) throw Error("segment: u and v coincide");
  RatVec w = (u + v) / Rat(2);
  RenormSegmentReport out;
  if (which == RenormKind::I) {
    Rat a = frame.norm_i_square(u), b = frame.norm_i_square(v), c = frame.norm_i_square(w);
    if (a != b || a != c) {
      out.detail = "norms differ at the endpoints or the midpoint";
      return out;
    }
    bool same = frame.beta_differences(u) == frame.beta_differences(v);
    out.verdict = same ? SegmentVerdict::ConclusionHolds : SegmentVerdict::ConclusionFails;
    out.detail = same ? "v - u has vanishing beta differences" : "beta differences of u and v disagree";
    return out;
  }
  auto eu = exact_norm_ii(frame, u), ev = exact_norm_ii(frame, v), ew = exact_norm_ii(frame, w);
  if (eu && ev && ew) {
    if (compare(*eu, *ev) != 0 || compare(*eu, *ew) != 0) {
      out.detail = "norms differ at the endpoints or the midpoint";
      return out;
    }
    bool in_u = frame.beta_square(u) == 0 && frame.beta_square(v) == 0;
    out.verdict = in_u ? SegmentVerdict::ConclusionHolds : SegmentVerdict::ConclusionFails;
    out.detail = in_u ? "u and v have vanishing beta" : "u or v is outside the image of U";
    return out;
  }
  for (Rat eps(1, 1000000000000LL); eps >= Rat(1, 1) / pow2(120); eps /= Rat(1 << 20)) {
    CertInterval a = frame.norm_ii(u, eps), b = frame.norm_ii(v, eps), c = frame.norm_ii(w, eps);
    if (!a.overlaps(b) || !a.overlaps(c) || !b.overlaps(c)) {
      out.detail = "certified: norms differ at the endpoints or the midpoint";
      return out;
    }
  }
  out.verdict = SegmentVerdict::Undecided;
  out.detail = "undecided, tighten eps";
  return out;
}

RenormSegmentReport u_segment_check(const RenormFrame& frame, const RatVec& x, const RatVec& y, RenormKind which) {
  if (equal(x, y)) throw Error("segment: u and v coincide");
  RatVec z = (x + y) / Rat(2);
  const std::int64_t blocks = std::max<std::int64_t>(frame.base().block_count(), 8);
  RenormSegmentReport out;
  std::optional<Rat> nx, ny, nz;
  if (which == RenormKind::I) {
    // beta(Ux) = 0, so ||Ux||_I = ||Ux||
    auto value = [&](const RatVec& p) -> std::optional<Rat> {
      if (!all_zero(frame.u_beta_differences(p, blocks))) return std::nullopt;
      CertInterval r = frame.u_norm_bounds(p);
      if (r.lo != r.hi) return std::nullopt;
      return r.lo;
    };
    nx = value(x), ny = value(y), nz = value(z);
  } else {
    nx = exact_u_norm_ii(frame, x), ny = exact_u_norm_ii(frame, y), nz = exact_u_norm_ii(frame, z);
  }
  if (!nx || !ny || !nz) {
    out.verdict = SegmentVerdict::Undecided;
    out.detail = "undecided, tighten eps";
    return out;
  }
  if (*nx != *ny || *nx != *nz) {
    out.detail = "norms differ at the endpoints or the midpoint";
    return out;
  }
  bool holds = which == RenormKind::I ? all_zero(frame.u_beta_differences(RatVec(y - x), blocks))
                            : all_zero(frame.u_beta_differences(x, blocks)) &&
                                  all_zero(frame.u_beta_differences(y, blocks));
  out.verdict = holds ? SegmentVerdict::ConclusionHolds : SegmentVerdict::ConclusionFails;
  out.detail = holds ? "structural conclusion verified" : "structural conclusion violated";
  return out;
}

RenormNorm::RenormNorm(std::shared_ptr<const RenormFrame> frame, RenormKind which)
    : frame_(std::move(frame)), which_(which) {
  if (!frame_) throw Error("renorm: missing frame");
}

NormValue RenormNorm::eval(const RatVec& x, const Rat& eps) const {
  if (x.size() != dim()) throw DimensionMismatch("vector is not in F_D");
  if (which_ == RenormKind::I) return frame_->norm_i(x);
  return NormValue::interval(frame_->norm_ii(x, eps));
}

std::vector<Rat> summ_constants(Index d) {
  std::vector<Rat> c;
  for (Index n = 1; n <= d; ++n) c.push_back(Rat(7) * pow2(-static_cast<int>(2 * n + 8)));
  return c;
}

}  // namespace normforge
