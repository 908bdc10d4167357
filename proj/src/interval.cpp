#include "normforge/interval.hpp"

namespace normforge {

CertInterval::CertInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw Error("interval with lo > hi");
}

CertInterval operator+(const CertInterval& a, const CertInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

CertInterval operator-(const CertInterval& a, const CertInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

CertInterval operator+(const CertInterval& a, const Rat& b) { return {a.lo + b, a.hi + b}; }

CertInterval operator*(const Rat& c, const CertInterval& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

CertInterval mul_nonneg(const CertInterval& a, const CertInterval& b) {
  if (a.lo < 0 || b.lo < 0) throw Error("mul_nonneg on a negative interval");
  return {a.lo * b.lo, a.hi * b.hi};
}

CertInterval square_nonneg(const CertInterval& a) { return mul_nonneg(a, a); }

CertInterval max(const CertInterval& a, const CertInterval& b) {
  return {a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? b.hi : a.hi};
}

CertInterval sqrt(const CertInterval& a, const Rat& eps) {
  Rat lo = a.lo < 0 ? Rat(0) : a.lo;
  return {sqrt_bounds(lo, eps).lo, sqrt_bounds(a.hi, eps).hi};
}

CertInterval sqrt_of(const Rat& q, const Rat& eps) {
  auto b = sqrt_bounds(q, eps);
  return {b.lo, b.hi};
}

CertInterval QuadSurd::enclose(const Rat& eps) const {
  auto s = sqrt_bounds(b, eps);
  return {a + s.lo, a + s.hi};
}

QuadSurd QuadSurd::scaled(const Rat& c) const {
  if (c < 0) throw Error("QuadSurd::scaled expects c >= 0");
  return {c * a, c * c * b};
}

namespace {
int sgn(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
}  // namespace

int sign_linear_surd(const Rat& p, const Rat& q, const Rat& r) {
  if (r < 0) throw Error("negative radicand");
  int sp = sgn(p);
  int sq = r == 0 ? 0 : sgn(q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // opposite signs: compare p^2 with q^2 r
  Rat lhs = p * p;
  Rat rhs = q * q * r;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

int sign_two_surds(const Rat& p, const Rat& q, const Rat& r) {
  if (q < 0 || r < 0) throw Error("negative radicand");
  // left = p + sqrt(q), right = sqrt(r) >= 0
  int left = sign_linear_surd(p, Rat(1), q);
  if (left < 0) return -1;
  if (left == 0) return r == 0 ? 0 : -1;
  // both sides nonnegative: compare squares p^2 + q + 2 p sqrt(q) versus r
  return sign_linear_surd(p * p + q - r, 2 * p, q);
}

int compare(const QuadSurd& x, const QuadSurd& y) {
  return sign_two_surds(x.a - y.a, x.b, y.b);
}

int compare(const QuadSurd& x, const Rat& y) { return sign_linear_surd(x.a - y, Rat(1), x.b); }

NormValue NormValue::rational(Rat v) {
  NormValue out;
  out.kind_ = Kind::Rational;
  out.interval_ = CertInterval::point(v);
  out.value_ = std::move(v);
  return out;
}

NormValue NormValue::sqrt_of(Rat square) {
  if (square < 0) throw Error("NormValue::sqrt_of negative square");
  Rat root;
  if (exact_sqrt(square, root)) return rational(root);
  NormValue out;
  out.kind_ = Kind::Sqrt;
  auto b = sqrt_bounds(square, pow2(-64));
  out.interval_ = {b.lo, b.hi};
  out.value_ = std::move(square);
  return out;
}

NormValue NormValue::interval(CertInterval iv) {
  NormValue out;
  out.kind_ = Kind::Interval;
  out.interval_ = std::move(iv);
  return out;
}

std::optional<Rat> NormValue::value() const {
  if (kind_ == Kind::Rational) return value_;
  return std::nullopt;
}

Rat NormValue::square() const {
  switch (kind_) {
    case Kind::Rational:
      return value_ * value_;
    case Kind::Sqrt:
      return value_;
    case Kind::Interval:
      break;
  }
  throw Error("square() requested for an interval-valued norm");
}

CertInterval NormValue::enclose(const Rat& eps) const {
  switch (kind_) {
    case Kind::Rational:
      return CertInterval::point(value_);
    case Kind::Sqrt:
      return normforge::sqrt_of(value_, eps);
    case Kind::Interval:
      break;
  }
  return interval_;
}

NormValue NormValue::scaled(const Rat& c) const {
  if (c < 0) throw Error("NormValue::scaled expects c >= 0");
  switch (kind_) {
    case Kind::Rational:
      return rational(c * value_);
    case Kind::Sqrt:
      return sqrt_of(c * c * value_);
    case Kind::Interval:
      break;
  }
  return interval(c * interval_);
}

std::string NormValue::describe() const {
  switch (kind_) {
    case Kind::Rational:
      return to_string(value_);
    case Kind::Sqrt:
      return "sqrt(" + to_string(value_) + ")";
    case Kind::Interval:
      break;
  }
  return "[" + to_string(interval_.lo) + ", " + to_string(interval_.hi) + "]";
}

int compare_exact(const NormValue& a, const NormValue& b) {
  Rat sa = a.square();
  Rat sb = b.square();
  return sa < sb ? -1 : (sb < sa ? 1 : 0);
}

}  // namespace normforge
