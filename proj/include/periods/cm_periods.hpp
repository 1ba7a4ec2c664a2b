#pragma once

#include <string>
#include <vector>

#include "periods/padic.hpp"
#include "periods/reconstruct.hpp"

namespace periods {

/// Arithmetic of Q(sqrt(-d)) for squarefree d > 0.
struct ImagQuadData {
  long d = 0;
  long disc = 0;  // field discriminant: -d if d == 3 mod 4, else -4d
  long h = 0;
  long w = 0;

  /// |disc|; the character below is periodic with this modulus.
  long modulus() const { return disc < 0 ? -disc : disc; }
  /// Quadratic character of the field at u, written additively: 0 for +1,
  /// 1 for -1. Requires gcd(u, disc) = 1.
  int epsilon(long u) const;
};

bool is_squarefree(long n);
long squarefree_kernel(long n);
/// Kronecker symbol (a/n), which is the Jacobi symbol for odd n > 0.
int kronecker(long a, long n);

ImagQuadData imag_quad_data(long d);
/// Class number by enumerating reduced primitive forms of discriminant D < 0.
long class_number(long disc);

/// r/d with 0 < r <= d and r == u mod d.
Rational bracket(long u, long d);
Rational bracket(const Rational& x);

/// p divides the discriminant of Q(sqrt(-d)).
bool is_ramified(long p, long d);

/// prod base_i^(exponent_i), with exponents kept exact.
struct ExponentiatedProduct {
  struct Factor {
    long u;
    Rational argument;  // the Gamma_p argument
    Padic base;
    Rational exponent;
  };
  std::vector<Factor> factors;
  long collapse_power = 1;  // lcm of the exponent denominators
  Padic collapsed = Padic::exact_zero(2);  // prod base^(exponent * collapse_power)
};

/// Builds the collapsed value from the factor list; an empty product is 1
/// to precision n.
void collapse(ExponentiatedProduct& prod, long p, long n);

/// prod_{u in (Z/|D|)^x} Gamma_p(<pu/|D|>)^(-eps(u) w / 4h) for p odd and
/// unramified in Q(sqrt(-d)).
ExponentiatedProduct cm_period_unramified(long d, long p, long n);

/// kappa = prod_{u in (Z/m)^x} Gamma_3(<u/m>)^((m/u) w / 2h) for the field
/// Q(sqrt(-3m)), 3 not dividing m.
ExponentiatedProduct cm_period_ramified_p3(long m, long n);

}  // namespace periods
