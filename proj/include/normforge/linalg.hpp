#pragma once

#include "normforge/rational.hpp"

#include <optional>
#include <vector>

namespace normforge {

/// Reduced row echelon form, in place. Returns the pivot columns.
std::vector<Index> rref(RatMat& m);

Index rank(RatMat m);
Index rank(const std::vector<RatVec>& vectors);

/// Basis of {y : m y = 0}.
std::vector<RatVec> null_space(const RatMat& m);

std::optional<RatMat> inverse(const RatMat& m);

/// Some solution of m y = b, if one exists.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

RatMat rows_to_matrix(const std::vector<RatVec>& rows, Index cols);
RatMat columns_to_matrix(const std::vector<RatVec>& columns, Index rows);

}  // namespace normforge
