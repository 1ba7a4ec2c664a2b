#include "periods/reconstruct.hpp"

namespace periods {

namespace {

// Wang's half-extended-Euclid: returns n/m with |n| <= H, 0 < m <= H and
// n == m*x (mod mod), if one exists.
std::optional<Rational> reconstruct_mod(const Integer& x, const Integer& mod, const Integer& height) {
  Integer r0 = mod, r1 = x;
  Integer t0 = 0, t1 = 1;
  while (r1 > height) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > height) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Rational> rational_reconstruct(const Padic& x, const Integer& height) {
  const long p = x.prime();
  if (height < 1) throw DomainError("rational_reconstruct: height bound must be positive");
  if (x.is_exact_zero()) return Rational(0);
  const Integer two_h2 = 2 * height * height;

  if (x.is_zero() || x.valuation() >= 0) {
    const long a = x.abs_prec();
    if (a <= 0 || prime_power(p, a) <= two_h2)
      throw PrecisionError("rational_reconstruct: precision too low for the height bound", a);
    if (x.is_zero()) return Rational(0);
    auto r = reconstruct_mod(x.residue(a), prime_power(p, a), height);
    if (r && r->get_den() % p == 0) return std::nullopt;
    return r;
  }

  // Negative valuation: reconstruct the unit part and divide.
  const long v = x.valuation();
  const long rel = x.rel_prec();
  if (prime_power(p, rel) <= two_h2)
    throw PrecisionError("rational_reconstruct: precision too low for the height bound", x.abs_prec());
  auto r = reconstruct_mod(x.unit(), prime_power(p, rel), height);
  if (!r) return std::nullopt;
  Rational out = *r / Rational(prime_power(p, -v));
  out.canonicalize();
  if (abs(out.get_num()) > height || out.get_den() > height) return std::nullopt;
  return out;
}

AlgebraicityProbe probe_rational_power(const Padic& x, const Integer& height, long power_cap) {
  AlgebraicityProbe probe;
  probe.height = height;
  Padic acc = x;
  for (long k = 1; k <= power_cap; ++k) {
    if (k > 1) acc = acc * x;
    if (auto r = rational_reconstruct(acc, height)) {
      probe.found = true;
      probe.power = k;
      probe.value = *r;
      return probe;
    }
  }
  return probe;
}

std::optional<QuadraticRelation> find_quadratic_relation(const Padic& x, long height) {
  if (x.is_zero()) throw PrecisionError("find_quadratic_relation: x is indistinguishable from zero", 0);
  const long a = x.abs_prec();
  if (a <= 0 || x.valuation() < 0) throw DomainError("find_quadratic_relation: x must be integral");
  const Integer mod = prime_power(x.prime(), a);
  const Integer half = mod / 2;
  const Integer y = x.residue(a);
  const Integer y2 = (y * y) % mod;
  for (long c2 = 1; c2 <= height; ++c2)
    for (long c1 = -height; c1 <= height; ++c1) {
      Integer c0 = -(c1 * y + c2 * y2);
      mpz_mod(c0.get_mpz_t(), c0.get_mpz_t(), mod.get_mpz_t());
      if (c0 > half) c0 -= mod;
      if (abs(c0) <= height) return QuadraticRelation{c0, Integer(c1), Integer(c2)};
    }
  return std::nullopt;
}

}  // namespace periods
