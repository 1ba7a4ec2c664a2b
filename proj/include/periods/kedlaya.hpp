#pragma once

#include <array>
#include <optional>
#include <string>

#include "periods/matrix.hpp"
#include "periods/padic.hpp"

namespace periods {

/// y^2 = x^3 + a2 x^2 + a1 x + a0 over Z with good reduction at p >= 5.
struct EllipticCurveW {
  std::array<Integer, 4> f{0, 0, 0, 1};  // coefficients of x^0 .. x^3
  long p = 5;
  long precision = 4;

  void validate() const;
  Integer discriminant() const;
  std::string str() const;
};

/// Parses a cubic such as "x^3+2*x-1" or "x^3 - x" into coefficients.
std::array<Integer, 4> parse_cubic(const std::string& text);

/// a_p = p + 1 - #E(F_p), summing the quadratic character of f(x).
long count_points(const std::array<Integer, 4>& f, long p);
/// Affine point count by tabulating f(x) against the squares y^2.
long count_affine_points_by_y(const std::array<Integer, 4>& f, long p);

struct FrobeniusMatrix {
  PeriodMatrix matrix;  // columns are F(dx/y), F(x dx/y)
  EllipticCurveW curve;
  long precision = 0;
  long working_precision = 0;
  long terms = 0;  // binomial terms kept
  bool selftest_passed = false;
  bool selftest_run = false;
};

/// Matrix of the p-power Frobenius on H^1 with basis {dx/y, x dx/y}. With
/// selftest set the computation is repeated with twice the series terms
/// and a larger precision buffer; disagreement mod p^N throws.
FrobeniusMatrix kedlaya_frobenius(const EllipticCurveW& curve, bool selftest = false);

/// The raw computation at a fixed working precision and series length.
PeriodMatrix kedlaya_matrix(const EllipticCurveW& curve, long working_precision, long terms);

/// Series length for target precision n.
long kedlaya_terms(long p, long n);

struct CharpolyCertificate {
  long trace_valuation = 0;  // v_p(trace - a_p)
  long det_valuation = 0;    // v_p(det - p)
  long required = 0;
  std::optional<Rational> trace_recovered;
  std::optional<Rational> det_recovered;
  bool pass() const { return trace_valuation >= required && det_valuation >= required; }
};

CharpolyCertificate charpoly_certificate(const FrobeniusMatrix& m, long a_p);

}  // namespace periods
