#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "periods/error.hpp"

namespace periods {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sentinel valuation / precision of an exact zero.
inline constexpr long kInfinitePrecision = std::numeric_limits<long>::max();

bool is_prime(long n);
Integer prime_power(long p, long n);
/// v_p(n) for nonzero n.
long valuation(const Integer& n, long p);
/// v_p(x) for nonzero x.
long valuation(const Rational& x, long p);
/// Parses "a", "-a" or "a/b" into a normalized rational.
Rational parse_rational(const std::string& text);

/// Three-valued comparison outcome. Two values that agree on every digit
/// they both know are "indistinguishable"; only exact zeros compare equal.
enum class Agreement { equal, distinct, indistinguishable };

/// A p-adic number u * p^v known to relative precision N, i.e. u is only
/// meaningful modulo p^N. Zero comes in two observable flavours: the exact
/// zero, and a value known to vanish modulo p^A ("zero to precision").
///
/// Precision propagation:
///   add/sub: absolute precision = min of the operand absolute precisions;
///   mul/div: relative precision = min of the operand relative precisions.
///
/// Values are immutable.
class Padic {
 public:
  enum class State : std::uint8_t { exact_zero, zero_to_precision, nonzero };

  static Padic exact_zero(long p);
  static Padic zero_to_precision(long p, long abs_prec);
  /// Canonical representative of x to relative precision rel_prec.
  static Padic from_rational(long p, const Rational& x, long rel_prec);
  static Padic from_integer(long p, const Integer& x, long rel_prec);
  /// u * p^v with u a unit; u is reduced modulo p^rel_prec.
  static Padic from_unit(long p, long v, const Integer& u, long rel_prec);

  long prime() const { return p_; }
  State state() const { return state_; }
  bool is_exact_zero() const { return state_ == State::exact_zero; }
  /// True for exact zero and for zero to precision.
  bool is_zero() const { return state_ != State::nonzero; }
  bool is_unit() const { return state_ == State::nonzero && val_ == 0; }

  /// Exact valuation of a nonzero value. For zero to precision this is the
  /// known lower bound (the absolute precision); kInfinitePrecision for the
  /// exact zero.
  long valuation() const;
  long rel_prec() const { return state_ == State::nonzero ? rel_ : 0; }
  long abs_prec() const;
  const Integer& unit() const { return unit_; }

  /// Base-p digits of the unit part, least significant first, rel_prec long.
  std::vector<long> digits() const;
  /// Integer representative modulo p^a of an integral value; requires
  /// a <= abs_prec().
  Integer residue(long a) const;
  /// The rational u * p^v with 0 <= u < p^N.
  Rational to_rational() const;

  /// Drops digits so that absolute precision is at most a.
  Padic truncate_abs(long a) const;

  Padic operator-() const;
  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b);
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b);
  Padic& operator+=(const Padic& b) { return *this = *this + b; }
  Padic& operator-=(const Padic& b) { return *this = *this - b; }
  Padic& operator*=(const Padic& b) { return *this = *this * b; }
  Padic& operator/=(const Padic& b) { return *this = *this / b; }

  /// Multiplication and division by an exact integer. Relative precision is
  /// preserved; valuations shift by v_p(n).
  Padic mul_exact(const Integer& n) const;
  Padic div_exact(const Integer& n) const;
  Padic add_exact(const Rational& x) const;
  Padic pow(long n) const;
  Padic inverse() const;

  friend Agreement compare(const Padic& a, const Padic& b);

  /// `p^v * (d_0 + d_1*p + ... + d_{N-1}*p^{N-1}) + O(p^{v+N})`;
  /// `0 (exact)` for the exact zero and `O(p^A)` for zero to precision.
  std::string str() const;

 private:
  Padic(long p, State s, long val, Integer unit, long rel)
      : p_(p), state_(s), val_(val), unit_(std::move(unit)), rel_(rel) {}

  static Padic normalize(long p, Integer s, long v_low, long abs_prec);

  long p_ = 2;
  State state_ = State::exact_zero;
  long val_ = 0;  // valuation, or absolute precision for zero_to_precision
  Integer unit_ = 0;
  long rel_ = 0;
};

/// Valuation of a residual: the exact valuation if it is nonzero, or the
/// precision to which it is known to vanish.
long residual_valuation(const Padic& r);

/// True iff a and b agree modulo p^a (both must be known that far).
bool agree_to(const Padic& a, const Padic& b, long abs_prec);

/// Teichmuller lift of a unit, iterating y <- y^p modulo p^N until stable.
Padic teichmuller(const Padic& x);

/// log(1+t) on the principal units 1 + pZ_p (1 + 4Z_2 for p = 2).
Padic log_principal(const Padic& x);
/// Iwasawa logarithm of a unit: log(x / teichmuller(x)).
Padic iwasawa_log(const Padic& x);
/// p-adic exponential; requires v(x) >= 1 (>= 2 for p = 2).
Padic exp_p(const Padic& x);

/// Largest index n such that a term of valuation n*s - floor(log_p n)
/// can still fall below target. Terms past it never matter.
long log_series_terms(long p, long s, long target);
/// Same for the exponential, using v_p(n!) <= (n-1)/(p-1).
long exp_series_terms(long p, long s, long target);

/// Hensel lift of a k-th root of c with gcd(k, p) = 1, starting from the
/// residue first_digit (x^k == c mod p must hold).
Padic hensel_root(const Padic& c, long k, long first_digit);

}  // namespace periods
