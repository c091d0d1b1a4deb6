#include "flatpde/sym/linalg.hpp"

#include <optional>

namespace flatpde::sym {

namespace {

void require_square(const Matrix& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw NonSquareMatrix(m.size(), row.size());
  if (m.empty()) throw NonSquareMatrix(0, 0);
}

RationalExpr bareiss(Matrix m) {
  const std::size_t k = m.size();
  RationalExpr prev(1);
  bool negate = false;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    if (m[c][c].is_zero()) {
      std::size_t r = c + 1;
      while (r < k && m[r][c].is_zero()) ++r;
      if (r == k) return {};
      std::swap(m[r], m[c]);
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j)
        m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
      m[i][c] = RationalExpr();
    }
    prev = m[c][c];
  }
  return negate ? -m[k - 1][k - 1] : m[k - 1][k - 1];
}

unsigned weight(const RationalExpr& e) { return e.num().degree() + e.den().degree(); }

}  // namespace

RationalExpr determinant(const Matrix& m) {
  require_square(m);
  switch (m.size()) {
    case 1:
      return m[0][0];
    case 2:
      return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    case 3: {
      RationalExpr d;
      for (std::size_t j = 0; j < 3; ++j) {
        if (m[0][j].is_zero()) continue;
        std::size_t a = (j + 1) % 3, b = (j + 2) % 3;
        d += m[0][j] * (m[1][a] * m[2][b] - m[1][b] * m[2][a]);
      }
      return d;
    }
    default:
      return bareiss(m);
  }
}

LinearResult solve_linear(const Matrix& a, const Vector& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  Matrix m = a;
  Vector rhs = b;
  std::vector<std::optional<std::size_t>> pivot_row(cols);

  for (std::size_t r = 0; r < rows; ++r) {
    std::optional<std::size_t> pc;
    for (std::size_t c = 0; c < cols; ++c) {
      if (m[r][c].is_zero()) continue;
      if (!pc || weight(m[r][c]) < weight(m[r][*pc])) pc = c;
    }
    if (!pc) {
      if (!rhs[r].is_zero()) return Inconsistent{r};
      continue;
    }
    const std::size_t c = *pc;
    RationalExpr inv = m[r][c].inverse();
    for (std::size_t j = 0; j < cols; ++j)
      if (!m[r][j].is_zero()) m[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      RationalExpr f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      if (!rhs[r].is_zero()) rhs[i] -= f * rhs[r];
    }
    pivot_row[c] = r;
  }

  Vector x(cols);
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_row[c]) {
      x[c] = rhs[*pivot_row[c]];
    } else {
      free.push_back(c);
    }
  }
  if (free.empty()) return Solution{std::move(x)};

  std::vector<Vector> kernel;
  for (std::size_t f : free) {
    Vector k(cols);
    k[f] = RationalExpr(1);
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_row[c]) k[c] = -m[*pivot_row[c]][f];
    kernel.push_back(std::move(k));
  }
  return Underdetermined{std::move(x), std::move(kernel)};
}

}  // namespace flatpde::sym
