#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normforge {

using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVec = Vec<Rat>;
using RatMat = Mat<Rat>;
using Index = Eigen::Index;

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Scalars

/// Parses "p/q", "p" or "-p/q". The result is canonical.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& value);

inline Rat abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

/// 2^e for any integer e.
Rat pow2(int e);

/// Bit length of |numerator| plus bit length of the denominator, plus one
/// for a negative sign. Used as the encoding size in catalog orderings.
std::size_t encoding_bits(const Rat& value);

/// Rational lo <= sqrt(q) <= hi with hi - lo <= eps. lo == hi when sqrt(q)
/// is itself rational.
struct SqrtBounds {
  Rat lo;
  Rat hi;
};
SqrtBounds sqrt_bounds(const Rat& q, const Rat& eps);

/// Exact square root when q is the square of a rational.
bool exact_sqrt(const Rat& q, Rat& root);

// ---------------------------------------------------------------------------
// Vectors

inline RatVec zeros(Index n) { return RatVec::Zero(n); }
RatVec unit(Index n, Index i);
RatVec make_vec(std::initializer_list<Rat> values);

/// Lexicographic order on coordinates, shorter vector first on a tie prefix.
bool lex_less(const RatVec& a, const RatVec& b);
bool equal(const RatVec& a, const RatVec& b);
bool is_zero(const RatVec& a);

/// Flips the sign so that the first nonzero coordinate is positive.
RatVec sign_normalized(const RatVec& v);

Rat squared_norm(const RatVec& v);

std::vector<std::string> to_strings(const RatVec& v);
RatVec parse_vec(const std::vector<std::string>& parts);

/// 64-bit FNV-1a, used for input digests in reports.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace normforge
