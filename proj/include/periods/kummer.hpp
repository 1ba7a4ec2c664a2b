#pragma once

#include <vector>

#include "periods/gamma.hpp"
#include "periods/matrix.hpp"
#include "periods/padic.hpp"

namespace periods {

/// Kummer motive data: a rational a != 0, +-1 and an odd prime p of good
/// reduction (p divides neither numerator nor denominator of a).
struct KummerData {
  Rational a;
  long p;
  long precision;

  void validate() const;
  Padic a_padic() const;
};

/// Frobenius on the crystalline realization: [[1, L], [0, p]] with
/// L = log(a^(1-p)), a^(1-p) being a principal unit.
PeriodMatrix frobenius_matrix_kummer(const KummerData& data);

/// Column of p-adic periods (L/(1-p), 1).
std::vector<Padic> period_vector_kummer(const KummerData& data);

/// Valuation of f*phi - f for the row f = (1, L/(1-p)).
Residual check_frobenius_invariance(const KummerData& data);
/// Same residual for an arbitrary row vector f.
long frobenius_invariance_residual(const PeriodMatrix& phi, const std::vector<Padic>& row);

/// Frobenius matrix in the column convention with weight labels. Entry
/// (i, j) may be nonzero only when weight(i) <= weight(j); the basis must
/// contain a weight-0 block and no positive weights.
struct WeightBlockMatrix {
  PeriodMatrix phi;
  std::vector<int> weights;

  void validate() const;
};

/// The unique V with phi V = V whose weight-0 coordinates equal v0,
/// solved block by block from weight 0 downwards. Throws SingularError if
/// some diagonal block B has B - I singular at working precision.
std::vector<Padic> solve_mixed_period(const WeightBlockMatrix& m, const std::vector<Padic>& v0);
/// Same answer from one dense solve of (I - phi) V = 0 with V_0 = v0.
std::vector<Padic> solve_mixed_period_dense(const WeightBlockMatrix& m, const std::vector<Padic>& v0);

/// The Kummer Frobenius rewritten in the column convention: basis reversed
/// and transposed, weights (-2, 0).
WeightBlockMatrix kummer_weight_matrix(const KummerData& data);

}  // namespace periods
