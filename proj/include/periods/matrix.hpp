#pragma once

#include <string>
#include <vector>

#include "periods/padic.hpp"

namespace periods {

/// Rectangular matrix of p-adic numbers. Rows and columns may carry basis
/// labels; a matrix of periods is written in columns, one column per cycle.
class PeriodMatrix {
 public:
  PeriodMatrix(long p, std::size_t rows, std::size_t cols);
  PeriodMatrix(std::size_t rows, std::size_t cols, std::vector<Padic> entries);

  static PeriodMatrix identity(long p, std::size_t n, long prec);

  long prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Padic& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Padic& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const std::vector<Padic>& entries() const { return a_; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  PeriodMatrix transpose() const;
  friend PeriodMatrix operator*(const PeriodMatrix& a, const PeriodMatrix& b);
  friend PeriodMatrix operator-(const PeriodMatrix& a, const PeriodMatrix& b);

  Padic trace() const;
  /// Determinant by elimination with minimal-valuation pivots.
  Padic determinant() const;
  /// Smallest residual valuation over all entries.
  long min_valuation() const;

 private:
  long p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Padic> a_;
};

/// Solves A x = b for square A by Gaussian elimination, choosing the pivot
/// of least valuation in each column. Throws SingularError when every
/// candidate pivot is indistinguishable from zero.
std::vector<Padic> solve_linear(const PeriodMatrix& a, const std::vector<Padic>& b);

}  // namespace periods
