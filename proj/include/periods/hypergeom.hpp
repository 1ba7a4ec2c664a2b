#pragma once

#include <vector>

#include "periods/matrix.hpp"
#include "periods/padic.hpp"

namespace periods {

/// v(c_n) >= offset - floor(n / (p - 1)) for every n, including the
/// coefficients beyond the truncation order.
struct GrowthBound {
  long offset = 0;
};

/// Power series in t = lambda - lambda0, known through t^order.
struct FormalSeries {
  long p = 0;
  Padic lambda0 = Padic::exact_zero(2);
  std::vector<Padic> coeffs;  // c_0 .. c_order
  GrowthBound growth;

  long order() const { return static_cast<long>(coeffs.size()) - 1; }
  /// Smallest absolute precision among the coefficients.
  long precision() const;

  FormalSeries derivative() const;
  FormalSeries truncated(long order) const;
  /// Value at t with v(t) >= 1; the result carries the smaller of the
  /// arithmetic precision and the tail bound.
  Padic evaluate(const Padic& t) const;
  /// Valuation guaranteed for the omitted tail at a point of valuation s.
  long tail_bound(long s) const;
};

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
/// Product through the smaller of the two orders.
FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);

/// (t + lambda0)(t + lambda0 - 1) f'(t), known through order T - 1.
FormalSeries apply_D(const FormalSeries& f);

/// Solutions of D^2 f = -lambda(lambda - 1) f around lambda0.
struct KatzSolutions {
  FormalSeries alpha;  // alpha(lambda0) = 1, D alpha(lambda0) = e
  FormalSeries beta;   // beta(lambda0) = 0, D beta(lambda0) = 1
  Padic e = Padic::exact_zero(2);
  long working_precision = 0;
};

/// The solution with f(lambda0) = x0, (Df)(lambda0) = x1, through order T.
/// lambda0 and lambda0 - 1 must be units, x0 and x1 integral.
FormalSeries solve_with_data(const Padic& lambda0, const Padic& x0, const Padic& x1, long order);

/// Solves with lambda0, e at their own precision.
KatzSolutions solve_katz_ode(const Padic& lambda0, const Padic& e, long order);
/// Chooses the working precision so that the Wronskian residual through
/// order T - 2 is known to at least n digits.
KatzSolutions solve_katz_ode(long p, const Rational& lambda0, const Rational& e, long order, long n);

/// alpha D(beta) - beta D(alpha) - 1 through order T - 2.
FormalSeries wronskian_residual(const KatzSolutions& sol);

struct HypergeomPeriodMatrix {
  PeriodMatrix matrix;
  Padic lambda;
  Padic lambda0;
  Padic e;
  long order;
  long precision;  // absolute precision of every entry
};

/// [[D beta, -D alpha], [-beta, alpha]] at lambda, v(lambda - lambda0) >= 1.
/// Throws PrecisionError carrying the achievable precision when it falls
/// below n.
HypergeomPeriodMatrix period_matrix_hypergeom(const KatzSolutions& sol, const Padic& lambda, long n);

}  // namespace periods
