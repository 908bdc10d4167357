#pragma once

#include "normforge/embedding.hpp"
#include "normforge/interval.hpp"
#include "normforge/normed_space.hpp"
#include "normforge/treespace.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

enum class RenormKind { I, II };
std::string to_string(RenormKind k);
RenormKind parse_renorm_kind(const std::string& s);

/// 2^{-4 pi^-1(n, k)}.
Rat pi_weight(std::int64_t n, std::int64_t k);

/// rho_0, the gauge of co({(+-1, +-1, +-1)} u sqrt(2) B), exactly.
QuadSurd rho0(const Rat& r, const Rat& s, const Rat& t);
/// rho(r, s, t) = (|r| + |s|) / 4 + rho_0(r, s, t) / 2, exactly.
QuadSurd rho_exact(const Rat& r, const Rat& s, const Rat& t);
/// Enclosure of rho of width at most eps. Throws when eps <= 0.
CertInterval rho(const Rat& r, const Rat& s, const Rat& t, const Rat& eps);
/// rho over a box in the positive octant, by monotonicity.
CertInterval rho(const CertInterval& r, const CertInterval& s, const CertInterval& t, const Rat& eps);

class RenormFrame {
 public:
  explicit RenormFrame(std::shared_ptr<const EmbeddingFrame> base);

  const EmbeddingFrame& base() const { return *base_; }
  std::shared_ptr<const EmbeddingFrame> base_ptr() const { return base_; }
  Index dim() const { return base_->depth(); }

  /// e*_(n,k)(f) - 2 e*_(n+1,k)(f) for every (n, k) of the layout.
  std::vector<Rat> beta_differences(const RatVec& f) const;
  Rat beta_square(const RatVec& f) const;
  Rat alpha_square(const RatVec& f) const;
  Rat norm(const RatVec& f) const { return base_->f_norm(f); }
  Rat norm_i_square(const RatVec& f) const;
  NormValue norm_i(const RatVec& f) const { return NormValue::sqrt_of(norm_i_square(f)); }
  CertInterval norm_ii(const RatVec& f, const Rat& eps) const;

  /// The same quantities for Ux with the untruncated U. beta vanishes term
  /// by term; alpha is enclosed through a geometric tail bound.
  std::vector<Rat> u_beta_differences(const RatVec& x, std::int64_t blocks) const;
  CertInterval u_alpha_square(const RatVec& x, std::int64_t blocks) const;
  /// ||Ux|| bracketed by ||TUx||_X below and ||Ux||_{l2(X)} above.
  CertInterval u_norm_bounds(const RatVec& x) const;
  CertInterval u_norm_ii(const RatVec& x, const Rat& eps) const;

 private:
  std::shared_ptr<const EmbeddingFrame> base_;
  std::vector<Rat> alpha_weights_;
  std::vector<Rat> beta_weights_;
  std::vector<std::optional<Index>> successor_;  // index of (n+1, k)
};

/// sqrt(a) >= sqrt(b) + c sqrt(e), exactly (all arguments >= 0).
bool sqrt_sum_holds(const Rat& a, const Rat& b, const Rat& c, const Rat& e);

/// ||f||_I - ||P_d f||_I - 2^{-(2d+7)} ||f - P_d f||_I >= 0, decided exactly.
bool further_i_holds(const RenormFrame& frame, const RatVec& f, Index d);

struct CertifiedCheck {
  bool holds = false;
  bool decided = false;
  CertInterval slack;  // enclosure of lhs - rhs
};

/// ||f||_II >= ||P_d f||_II + 2^{-(2d+7)} ||f - P_d f||_II, tightening the
/// enclosures until the sign of the slack is certified or eps reaches
/// min_eps.
CertifiedCheck further_ii_check(const RenormFrame& frame, const RatVec& f, Index d, const Rat& eps,
                                const Rat& min_eps);

struct RenormSegmentReport {
  SegmentVerdict verdict = SegmentVerdict::NotConstant;
  std::string detail;
};

/// Constancy of ||.||_I or ||.||_II on [u, v] in F_D, via the midpoint.
RenormSegmentReport segment_check(const RenormFrame& frame, const RatVec& u, const RatVec& v, RenormKind which);
/// The same for the segment [Ux, Uy] with the untruncated U.
RenormSegmentReport u_segment_check(const RenormFrame& frame, const RatVec& x, const RatVec& y, RenormKind which);

/// (F_D, ||.||_I) and (F_D, ||.||_II) as norm expressions.
class RenormNorm final : public NormNode {
 public:
  RenormNorm(std::shared_ptr<const RenormFrame> frame, RenormKind which);
  Index dim() const override { return frame_->dim(); }
  std::string kind() const override { return which_ == RenormKind::I ? "renorm-I" : "renorm-II"; }
  NormValue eval(const RatVec& x, const Rat& eps) const override;
  bool exact() const override { return which_ == RenormKind::I; }
  const RenormFrame& frame() const { return *frame_; }
  RenormKind which() const { return which_; }

 private:
  std::shared_ptr<const RenormFrame> frame_;
  RenormKind which_;
};

/// 7 / 2^{2n+8}, n = 1..d.
std::vector<Rat> summ_constants(Index d);

}  // namespace normforge
