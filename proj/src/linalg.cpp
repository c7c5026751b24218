#include "relqc/linalg.hpp"

namespace relqc {

std::optional<RationalMatrix> invert_matrix(const RationalMatrix& m) {
  const int n = static_cast<int>(m.size());
  RationalMatrix work = m;
  RationalMatrix inv(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;

  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row) {
      if (work[row][col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    Rational lead = work[col][col];
    for (int j = 0; j < n; ++j) {
      work[col][j] /= lead;
      inv[col][j] /= lead;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col || work[row][col] == 0) continue;
      Rational factor = work[row][col];
      for (int j = 0; j < n; ++j) {
        work[row][j] -= factor * work[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<int> row_reduce(RationalMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = -1;
    for (int r = row; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[row]);
    Rational lead = m[row][col];
    for (int j = col; j < cols; ++j) m[row][j] /= lead;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational factor = m[r][col];
      for (int j = col; j < cols; ++j) m[r][j] -= factor * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m, int cols) {
  RationalMatrix reduced = m;
  for (auto& row : reduced) row.resize(cols, Rational(0));
  std::vector<int> pivots = row_reduce(reduced);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> vec(cols, 0);
    vec[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (r < reduced.size()) vec[pivots[r]] = -reduced[r][free];
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& m,
                                                  const std::vector<Rational>& rhs) {
  if (m.empty()) {
    for (const auto& v : rhs)
      if (v != 0) return std::nullopt;
    return std::vector<Rational>{};
  }
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  RationalMatrix aug = m;
  for (int r = 0; r < rows; ++r) aug[r].push_back(rhs[r]);
  std::vector<int> pivots = row_reduce(aug);

  std::vector<Rational> solution(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // pivot in the rhs column
    solution[pivots[r]] = aug[r][cols];
  }
  // Rows below the pivot rows must be consistent.
  for (std::size_t r = pivots.size(); r < static_cast<std::size_t>(rows); ++r) {
    if (aug[r][cols] != 0) return std::nullopt;
  }
  return solution;
}

}  // namespace relqc
