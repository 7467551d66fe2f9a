#include "rktree/rational_linalg.hpp"

#include <cstddef>

namespace rktree {

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size();
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    Rational inv = m[r][c];
    for (size_t k = c; k < cols; ++k) m[r][k] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational factor = m[i][c];
      for (size_t k = c; k < cols; ++k) m[i][k] -= factor * m[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

std::vector<RatVec> nullspace(RatMat m, int ncols) {
  const size_t n = static_cast<size_t>(ncols);
  for (auto& row : m) row.resize(n, Rational(0));
  std::vector<int> pivots = rref(m);

  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

  std::vector<RatVec> basis;
  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVec v(n, Rational(0));
    v[free_col] = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      v[static_cast<size_t>(pivots[pr])] = -m[pr][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_span(const std::vector<RatVec>& basis, const RatVec& v) {
  RatMat m = basis;
  rref(m);
  RatVec r = v;
  for (const auto& row : m) {
    size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == row.size()) continue;
    if (r[lead] == 0) continue;
    Rational factor = r[lead];  // row has a unit leading entry after rref
    for (size_t k = lead; k < r.size(); ++k) r[k] -= factor * row[k];
  }
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

}  // namespace rktree
