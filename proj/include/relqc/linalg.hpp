#pragma once

#include <optional>
#include <vector>

#include "relqc/rational.hpp"

namespace relqc {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Inverse by Gauss-Jordan elimination; nullopt when singular.
std::optional<RationalMatrix> invert_matrix(const RationalMatrix& m);

/// Row-reduce `m` in place to reduced row echelon form; returns pivot columns.
std::vector<int> row_reduce(RationalMatrix& m);

/// Basis of the right kernel of `m` (columns indexed 0..cols-1).
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m, int cols);

/// One solution x of m x = rhs, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& m,
                                                  const std::vector<Rational>& rhs);

}  // namespace relqc
