#pragma once

#include "normforge/rational.hpp"

#include <optional>

namespace normforge {

/// Closed interval [lo, hi] with rational endpoints, guaranteed to contain a
/// real value that is usually irrational.
struct CertInterval {
  Rat lo;
  Rat hi;

  CertInterval() = default;
  CertInterval(Rat l, Rat h);
  static CertInterval point(const Rat& v) { return {v, v}; }

  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool contains(const CertInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const CertInterval& o) const { return !(hi < o.lo || o.hi < lo); }
  Rat midpoint() const { return (lo + hi) / 2; }
};

CertInterval operator+(const CertInterval& a, const CertInterval& b);
CertInterval operator-(const CertInterval& a, const CertInterval& b);
CertInterval operator+(const CertInterval& a, const Rat& b);
/// Multiplication by a rational scalar of either sign.
CertInterval operator*(const Rat& c, const CertInterval& a);
/// Product of two intervals with nonnegative endpoints.
CertInterval mul_nonneg(const CertInterval& a, const CertInterval& b);
CertInterval square_nonneg(const CertInterval& a);
CertInterval max(const CertInterval& a, const CertInterval& b);
/// Outward-rounded square root; each endpoint is rounded with slack eps.
CertInterval sqrt(const CertInterval& a, const Rat& eps);
CertInterval sqrt_of(const Rat& q, const Rat& eps);

/// The real number a + sqrt(b) with rational a and b >= 0, compared exactly.
struct QuadSurd {
  Rat a;
  Rat b;

  static QuadSurd rational(const Rat& v) { return {v, Rat(0)}; }
  CertInterval enclose(const Rat& eps) const;
  /// c * (a + sqrt(b)) for c >= 0.
  QuadSurd scaled(const Rat& c) const;
  QuadSurd plus(const Rat& c) const { return {a + c, b}; }
};

/// Exact sign of p + q*sqrt(r) (r >= 0).
int sign_linear_surd(const Rat& p, const Rat& q, const Rat& r);
/// Exact sign of p + sqrt(q) - sqrt(r) (q, r >= 0).
int sign_two_surds(const Rat& p, const Rat& q, const Rat& r);
/// Exact three-way comparison of two surds.
int compare(const QuadSurd& x, const QuadSurd& y);
int compare(const QuadSurd& x, const Rat& y);

/// Value of a norm evaluation: an exact rational, the exact square root of a
/// rational, or a certified enclosure.
class NormValue {
 public:
  enum class Kind { Rational, Sqrt, Interval };

  static NormValue rational(Rat v);
  static NormValue sqrt_of(Rat square);
  static NormValue interval(CertInterval iv);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ != Kind::Interval; }
  bool is_rational() const { return kind_ == Kind::Rational; }

  /// Exact rational value (Rational kind, or Sqrt kind of a perfect square).
  std::optional<Rat> value() const;
  /// Exact square of the value (exact kinds only).
  Rat square() const;
  CertInterval enclose(const Rat& eps) const;
  /// The stored interval (Interval kind) or a point/sqrt enclosure.
  const CertInterval& interval() const { return interval_; }

  NormValue scaled(const Rat& c) const;  // c >= 0

  std::string describe() const;

 private:
  Kind kind_ = Kind::Rational;
  Rat value_;  // value (Rational) or square (Sqrt)
  CertInterval interval_;
};

/// Exact comparison of two exact norm values. Throws for interval values.
int compare_exact(const NormValue& a, const NormValue& b);

}  // namespace normforge
