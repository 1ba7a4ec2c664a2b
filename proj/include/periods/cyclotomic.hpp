#pragma once

#include <vector>

#include "periods/gamma.hpp"
#include "periods/padic.hpp"

namespace periods {

/// Element of Z_p[pi]/(pi^(p-1) + p), stored as c_0 + c_1 pi + ... +
/// c_{p-2} pi^(p-2) with c_i in Z/p^K. Since (p^K) = (pi^((p-1)K)) this is
/// exactly the ring modulo pi^((p-1)K); the element is known modulo pi^M,
/// M <= (p-1)K.
class Eisenstein {
 public:
  /// Zero to pi-adic precision m.
  static Eisenstein zero(long p, long m);
  static Eisenstein from_integer(long p, const Integer& c, long m);
  /// Embeds an integral p-adic number; precision is capped by its own.
  static Eisenstein from_padic(const Padic& c, long m);
  static Eisenstein pi(long p, long m);

  long prime() const { return p_; }
  /// Known modulo pi^precision().
  long precision() const { return prec_; }
  long coefficient_precision() const { return k_; }
  const std::vector<Integer>& coefficients() const { return c_; }
  Padic coefficient(std::size_t i) const;

  /// pi-adic valuation, capped at precision() when the element vanishes to
  /// the known precision.
  long valuation() const;
  bool is_zero() const { return valuation() >= prec_; }

  Eisenstein operator-() const;
  friend Eisenstein operator+(const Eisenstein& a, const Eisenstein& b);
  friend Eisenstein operator-(const Eisenstein& a, const Eisenstein& b);
  friend Eisenstein operator*(const Eisenstein& a, const Eisenstein& b);
  friend Eisenstein operator/(const Eisenstein& a, const Eisenstein& b);
  Eisenstein pow(long n) const;
  /// Inverse of a unit (valuation 0).
  Eisenstein inverse() const;
  Eisenstein with_precision(long m) const;

  /// Norm to Q_p: determinant of multiplication on the basis 1, pi, ...
  Padic norm() const;

  /// Integer digits per coefficient needed for pi-adic precision m.
  static long coefficient_digits(long p, long m);

 private:
  Eisenstein(long p, long k, long prec, std::vector<Integer> c);

  long p_;
  long k_;
  long prec_;
  std::vector<Integer> c_;
};

/// The p-th root of unity z with z == 1 + pi (mod pi^2), to precision m.
Eisenstein zeta_p(long p, long m);

/// g_a = sum_{x=1}^{p-1} omega(x)^(-a) zeta^x, to pi-adic precision m.
Eisenstein gauss_sum(long p, long a, long m);
/// Same sum with the Teichmuller characters read off powers of a
/// generator's lift instead of lifting every x separately.
Eisenstein gauss_sum_by_generator(long p, long a, long m);
/// Complex conjugate sum_{x} omega(x)^a zeta^(-x).
Eisenstein gauss_sum_conjugate(long p, long a, long m);

/// Residual valuation v_pi(g_a + pi^a Gamma_p(a/(p-1))) (the Gross-Koblitz
/// identity for q = p) and whether it reaches m.
struct GrossKoblitzResult {
  long p;
  long a;
  long required;
  long valuation;
  bool pass() const { return valuation >= required; }
};

GrossKoblitzResult gross_koblitz_residual(long p, long a, long m);

/// The sign s with g_1 + s pi Gamma_5(1/4) == 0 at p = 5, pi-precision 16.
/// Computed once; throws if neither sign matches.
int gross_koblitz_convention();

}  // namespace periods
