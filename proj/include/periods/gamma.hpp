#pragma once

#include "periods/padic.hpp"

namespace periods {

/// Morita's p-adic Gamma function (Gamma_p(0) = 1, Gamma_p(1) = -1).
struct GammaValue {
  Padic argument;
  Padic value;
  long p;
  long precision;
};

/// Gamma_p(x) to absolute precision min(N, abs_prec(x)), p odd, x integral.
///
/// Evaluated at the integer representative 0 < m <= p^N of x as
/// (-1)^m * prod_{0<j<m, p does not divide j} j mod p^N. The product is
/// assembled block-wise: the units of a block of length p^(l+1) form a
/// polynomial in the block index whose coefficients of degree >= N vanish
/// modulo p^N, so each level costs O(p N^2) operations.
Padic gamma_p(const Padic& x, long n);
GammaValue evaluate_gamma(const Padic& x, long n);

/// Gamma_p at the integer m, 1 <= m, by the direct O(m) product.
Integer gamma_p_direct(long p, const Integer& m, long n);

/// prod_{1 <= j <= count, p does not divide j} j mod p^n via the block
/// polynomial recursion.
Integer unit_factorial(long p, const Integer& count, long n);

struct Residual {
  long valuation = 0;  // valuation of the residual, or its known-zero precision
  long required = 0;
  bool pass() const { return valuation >= required; }
};

/// v_p(Gamma_p(x+1) - sigma(x) Gamma_p(x)), sigma(x) = -x for units and -1
/// otherwise.
Residual check_translation(const Padic& x, long n);

struct ReflectionResidual {
  int sign = 1;  // s with Gamma_p(x) Gamma_p(1-x) = s
  Residual residual;
};

/// Finds s = +-1 minimising v_p(Gamma_p(x) Gamma_p(1-x) - s).
ReflectionResidual check_reflection(const Padic& x, long n);

}  // namespace periods
