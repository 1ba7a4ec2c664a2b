#pragma once

#include <optional>

#include "periods/padic.hpp"

namespace periods {

/// Finds n/m with |n|, |m| <= height and n/m == x modulo p^A, where A is
/// the absolute precision of x. Requires p^A > 2*height^2 so that the
/// answer, if any, is unique; throws PrecisionError otherwise.
std::optional<Rational> rational_reconstruct(const Padic& x, const Integer& height);

/// Outcome of probing x, x^2, ..., x^cap for a rational value.
struct AlgebraicityProbe {
  bool found = false;
  long power = 0;        // smallest k with x^k of bounded height
  Rational value = 0;    // x^k
  Integer height = 0;    // the bound used
};

AlgebraicityProbe probe_rational_power(const Padic& x, const Integer& height, long power_cap);

/// c0 + c1 x + c2 x^2 == 0 modulo p^A with c2 > 0 and all |ci| <= height.
struct QuadraticRelation {
  Integer c0, c1, c2;
};

/// Smallest-c2 relation by exhaustive search over (c2, c1); O(height^2).
/// Intended for small heights only.
std::optional<QuadraticRelation> find_quadratic_relation(const Padic& x, long height);

}  // namespace periods
