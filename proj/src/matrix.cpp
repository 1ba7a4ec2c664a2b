#include "periods/matrix.hpp"

#include <algorithm>

namespace periods {

PeriodMatrix::PeriodMatrix(long p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, Padic::exact_zero(p)) {}

PeriodMatrix::PeriodMatrix(std::size_t rows, std::size_t cols, std::vector<Padic> entries)
    : p_(entries.empty() ? 2 : entries.front().prime()), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw DomainError("PeriodMatrix: entry count does not match shape");
  for (const auto& x : a_)
    if (x.prime() != p_) throw DomainError("PeriodMatrix: mixed primes");
}

PeriodMatrix PeriodMatrix::identity(long p, std::size_t n, long prec) {
  PeriodMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Padic::from_integer(p, 1, prec);
  return m;
}

PeriodMatrix PeriodMatrix::transpose() const {
  PeriodMatrix t(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

PeriodMatrix operator*(const PeriodMatrix& a, const PeriodMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("PeriodMatrix: shape mismatch in product");
  PeriodMatrix c(a.p_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Padic acc = Padic::exact_zero(a.p_);
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  c.row_labels = a.row_labels;
  c.col_labels = b.col_labels;
  return c;
}

PeriodMatrix operator-(const PeriodMatrix& a, const PeriodMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("PeriodMatrix: shape mismatch");
  PeriodMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] = a.a_[k] - b.a_[k];
  return c;
}

Padic PeriodMatrix::trace() const {
  Padic acc = Padic::exact_zero(p_);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
  return acc;
}

namespace {

// Index of the row >= k whose column-k entry has the least valuation among
// the nonzero ones; rows_ if none is distinguishable from zero.
std::size_t pick_pivot(const std::vector<std::vector<Padic>>& m, std::size_t k) {
  std::size_t best = m.size();
  for (std::size_t r = k; r < m.size(); ++r) {
    if (m[r][k].is_zero()) continue;
    if (best == m.size() || m[r][k].valuation() < m[best][k].valuation()) best = r;
  }
  return best;
}

}  // namespace

namespace {

// Cofactor expansion along the first row; no divisions, so it is exact for
// entries that are indistinguishable from zero.
Padic laplace_determinant(const std::vector<std::vector<Padic>>& m, long p) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Padic acc = Padic::exact_zero(p);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_exact_zero()) continue;
    std::vector<std::vector<Padic>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Padic> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const Padic term = m[0][j] * laplace_determinant(minor, p);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

Padic PeriodMatrix::determinant() const {
  if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
  std::vector<std::vector<Padic>> m(rows_);
  for (std::size_t i = 0; i < rows_; ++i) m[i].assign(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  if (rows_ == 0) throw DomainError("determinant of an empty matrix");
  if (rows_ <= 5) return laplace_determinant(m, p_);

  bool negate = false;
  std::vector<Padic> pivots;
  for (std::size_t k = 0; k < rows_; ++k) {
    const std::size_t piv = pick_pivot(m, k);
    if (piv == rows_) {
      // Finish the trailing minor without divisions.
      std::vector<std::vector<Padic>> minor;
      for (std::size_t r = k; r < rows_; ++r) minor.emplace_back(m[r].begin() + k, m[r].end());
      pivots.push_back(laplace_determinant(minor, p_));
      break;
    }
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    pivots.push_back(m[k][k]);
    for (std::size_t r = k + 1; r < rows_; ++r) {
      if (m[r][k].is_exact_zero()) continue;
      const Padic f = m[r][k] / m[k][k];
      for (std::size_t c = k; c < cols_; ++c) m[r][c] = m[r][c] - f * m[k][c];
    }
  }
  Padic det = pivots.front();
  for (std::size_t i = 1; i < pivots.size(); ++i) det = det * pivots[i];
  return negate ? -det : det;
}

long PeriodMatrix::min_valuation() const {
  long best = kInfinitePrecision;
  for (const auto& x : a_) best = std::min(best, residual_valuation(x));
  return best;
}

std::vector<Padic> solve_linear(const PeriodMatrix& a, const std::vector<Padic>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DomainError("solve_linear: shape mismatch");
  std::vector<std::vector<Padic>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(a(i, j));
    m[i].push_back(b[i]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t piv = pick_pivot(m, k);
    if (piv == n) throw SingularError("solve_linear: pivot indistinguishable from zero");
    std::swap(m[piv], m[k]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || m[r][k].is_exact_zero()) continue;
      const Padic f = m[r][k] / m[k][k];
      for (std::size_t c = k; c <= n; ++c) m[r][c] = m[r][c] - f * m[k][c];
    }
  }
  std::vector<Padic> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(m[i][n] / m[i][i]);
  return x;
}

}  // namespace periods
