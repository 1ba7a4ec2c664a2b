#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "periods/reconstruct.hpp"

using namespace periods;

namespace {

Rational rnd_rational(std::mt19937_64& rng, long p, bool allow_p = true) {
  for (;;) {
    Integer num = static_cast<long>(rng() % 2001) - 1000;
    Integer den = static_cast<long>(rng() % 200) + 1;
    if (num == 0) continue;
    if (!allow_p && (num % p == 0 || den % p == 0)) continue;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
}

}  // namespace

TEST_CASE("digits agree with direct peeling") {
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    for (const char* s : {"1", "-1", "22/7", "1/3", "-250/9", "7/25"}) {
      const Rational x = parse_rational(s);
      const Padic a = Padic::from_rational(p, x, 12);
      CHECK(oracle::matches(a, x));
    }
  }
}

TEST_CASE("zero states are distinct") {
  const Padic z = Padic::exact_zero(5);
  const Padic one = Padic::from_integer(5, 1, 6);
  const Padic d = one - one;
  CHECK(z.is_exact_zero());
  CHECK(d.is_zero());
  CHECK_FALSE(d.is_exact_zero());
  CHECK(d.abs_prec() == 6);
  CHECK(compare(z, z) == Agreement::equal);
  CHECK(compare(d, z) == Agreement::indistinguishable);
  CHECK(compare(one, z) == Agreement::distinct);
  CHECK(residual_valuation(d) == 6);
  CHECK(z.str() == "0 (exact)");
  CHECK(d.str() == "O(5^6)");
}

TEST_CASE("precision propagation") {
  const Padic a = Padic::from_rational(7, Rational(7), 5);   // v = 1, abs 6
  const Padic b = Padic::from_rational(7, Rational(3), 10);  // v = 0, abs 10
  CHECK((a + b).abs_prec() == 6);
  CHECK((a * b).rel_prec() == 5);
  CHECK((a * b).valuation() == 1);
  CHECK((b / a).valuation() == -1);
  CHECK((b / a).rel_prec() == 5);
  CHECK(a.mul_exact(49).valuation() == 3);
  CHECK(a.mul_exact(49).rel_prec() == 5);
}

TEST_CASE("field operations match exact rationals") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const long p = std::vector<long>{3, 5, 7, 13}[rng() % 4];
    const Rational x = rnd_rational(rng, p), y = rnd_rational(rng, p);
    const Padic a = Padic::from_rational(p, x, 9), b = Padic::from_rational(p, y, 7);
    CHECK(oracle::matches(a + b, x + y));
    CHECK(oracle::matches(a - b, x - y));
    CHECK(oracle::matches(a * b, x * y));
    CHECK(oracle::matches(a / b, x / y));
    CHECK(oracle::matches(a.pow(3), x * x * x));
  }
}

TEST_CASE("teichmuller and logarithm") {
  for (long p : {3L, 5L, 7L}) {
    const Padic w = teichmuller(Padic::from_integer(p, 2, 15));
    CHECK(residual_valuation(w.pow(p - 1).add_exact(-1)) >= 15);
    CHECK(w.residue(1) == 2);
    // log(a^(p-1)) for a = 2 against the series oracle
    const Rational a = 2;
    Rational ap = 1;
    for (long i = 0; i < p - 1; ++i) ap *= a;
    const Padic lg = log_principal(Padic::from_rational(p, ap, 15));
    CHECK(lg.residue(15) == oracle::log_principal(ap, p, 15));
    CHECK(residual_valuation(iwasawa_log(Padic::from_rational(p, a, 15)).mul_exact(p - 1) - lg) >= 15);
  }
}

TEST_CASE("exp and log invert each other") {
  const Padic x = Padic::from_rational(5, Rational(10, 3), 20);
  const Padic e = exp_p(x);
  CHECK(residual_valuation(log_principal(e) - x) >= 20);
}

TEST_CASE("hensel root") {
  const Padic c = Padic::from_integer(7, 2, 20);
  const Padic r = hensel_root(c, 2, 3);
  CHECK(residual_valuation(r * r - c) >= 20);
  CHECK(r.residue(1) == 3);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(Padic::from_integer(6, 1, 3), DomainError);
  CHECK_THROWS_AS(Padic::from_integer(5, 1, 0), DomainError);
  CHECK_THROWS_AS(Padic::exact_zero(5).inverse(), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  const Padic z = Padic::from_integer(5, 1, 4) - Padic::from_integer(5, 1, 4);
  CHECK_THROWS_AS(z.inverse(), PrecisionError);
}

TEST_CASE("rational reconstruction") {
  const Padic x = Padic::from_rational(5, Rational(22, 7), 10);
  const auto r = rational_reconstruct(x, 30);
  REQUIRE(r);
  CHECK(*r == Rational(22, 7));

  const Padic neg = Padic::from_rational(11, Rational(-3, 8), 8);
  CHECK(rational_reconstruct(neg, 100) == std::optional<Rational>(Rational(-3, 8)));

  // random digits: no small fraction explains 40 digits
  std::mt19937_64 rng(5);
  Integer u = 1;
  for (int i = 0; i < 40; ++i) u = u * 5 + static_cast<long>(rng() % 5);
  const Padic noise = Padic::from_unit(5, 0, u * 5 + 1, 40);
  CHECK_FALSE(rational_reconstruct(noise, 100).has_value());

  // not enough digits for uniqueness at this height
  CHECK_THROWS_AS(rational_reconstruct(Padic::from_rational(5, Rational(1, 3), 3), 100), PrecisionError);
}

TEST_CASE("rational power probe") {
  const Padic x = Padic::from_integer(5, -2, 20);
  const auto pr = probe_rational_power(x, 10, 4);
  CHECK(pr.found);
  CHECK(pr.power == 1);
  CHECK(pr.value == -2);

  // i in Z_5: i^2 = -1, not rational itself
  const Padic i = hensel_root(Padic::from_integer(5, -1, 20), 2, 2);
  const auto pi = probe_rational_power(i, 10, 4);
  CHECK(pi.found);
  CHECK(pi.power == 2);
  CHECK(pi.value == -1);

  const auto q = find_quadratic_relation(i, 5);
  REQUIRE(q);
  CHECK(q->c2 == 1);
  CHECK(q->c1 == 0);
  CHECK(q->c0 == 1);
}
