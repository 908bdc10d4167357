#include "normforge/rational.hpp"

#include <cctype>
#include <cstdio>

namespace normforge {

namespace {

Int parse_int(std::string_view text) {
  if (text.empty()) throw Error("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error("malformed integer literal");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error("malformed rational '" + std::string(text) + "'");
    }
  }
  return Int(std::string(text[0] == '+' ? text.substr(1) : text));
}

std::size_t bit_length(const Int& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(v) + 1;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Rat(num, den);
}

std::string to_string(const Rat& value) {
  Int num = boost::multiprecision::numerator(value);
  Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat pow2(int e) {
  Int p = 1;
  p <<= (e < 0 ? -e : e);
  return e < 0 ? Rat(Int(1), p) : Rat(p);
}

std::size_t encoding_bits(const Rat& value) {
  Int num = boost::multiprecision::numerator(value);
  Int den = boost::multiprecision::denominator(value);
  std::size_t sign = num < 0 ? 1 : 0;
  if (num < 0) num = -num;
  return bit_length(num) + bit_length(den) + sign;
}

bool exact_sqrt(const Rat& q, Rat& root) {
  if (q < 0) return false;
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  Int rn = boost::multiprecision::sqrt(num);
  Int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rat(rn, rd);
  return true;
}

SqrtBounds sqrt_bounds(const Rat& q, const Rat& eps) {
  if (q < 0) throw Error("sqrt of a negative rational");
  if (eps <= 0) throw Error("eps must be positive");
  Rat root;
  if (exact_sqrt(q, root)) return {root, root};
  int k = 0;
  while (pow2(-k) > eps) ++k;
  Int scale = 1;
  scale <<= k;
  // floor(q * scale^2)
  Rat scaled = q * Rat(scale * scale);
  Int fl = boost::multiprecision::numerator(scaled) /
           boost::multiprecision::denominator(scaled);
  Int s = boost::multiprecision::sqrt(fl);
  return {Rat(s, scale), Rat(s + 1, scale)};
}

RatVec unit(Index n, Index i) {
  RatVec v = RatVec::Zero(n);
  v(i) = 1;
  return v;
}

RatVec make_vec(std::initializer_list<Rat> values) {
  RatVec v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  Index n = std::min(a.size(), b.size());
  for (Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

bool equal(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return false;
  }
  return true;
}

bool is_zero(const RatVec& a) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != 0) return false;
  }
  return true;
}

RatVec sign_normalized(const RatVec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) > 0) return v;
    if (v(i) < 0) return -v;
  }
  return v;
}

Rat squared_norm(const RatVec& v) {
  Rat s = 0;
  for (Index i = 0; i < v.size(); ++i) s += v(i) * v(i);
  return s;
}

std::vector<std::string> to_strings(const RatVec& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

RatVec parse_vec(const std::vector<std::string>& parts) {
  RatVec v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v(static_cast<Index>(i)) = parse_rat(parts[i]);
  }
  return v;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace normforge
