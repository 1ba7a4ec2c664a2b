#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "periods/hypergeom.hpp"
#include "periods/kedlaya.hpp"

using namespace periods;

namespace {

FormalSeries series(long p, long l0, std::vector<long> c, long n) {
  FormalSeries f;
  f.p = p;
  f.lambda0 = Padic::from_integer(p, l0, n);
  for (long x : c) f.coeffs.push_back(x == 0 ? Padic::exact_zero(p) : Padic::from_integer(p, x, n));
  return f;
}

long min_residual(const FormalSeries& f) {
  long v = kInfinitePrecision;
  for (const auto& c : f.coeffs) v = std::min(v, residual_valuation(c));
  return v;
}

}  // namespace

TEST_CASE("D is a derivation") {
  const FormalSeries f = series(5, 2, {1, 3, -2, 7, 4, 1}, 12);
  const FormalSeries g = series(5, 2, {2, -1, 5, 0, 3, 6}, 12);
  const FormalSeries lhs = apply_D(f * g);
  const FormalSeries rhs = f * apply_D(g) + g * apply_D(f);
  CHECK(min_residual(lhs.truncated(4) - rhs.truncated(4)) >= 12);
  CHECK(min_residual(apply_D(f + g).truncated(4) - (apply_D(f) + apply_D(g)).truncated(4)) >= 12);
}

TEST_CASE("series satisfies the recurrence") {
  const KatzSolutions sol = solve_katz_ode(7, Rational(3), Rational(2), 30, 10);
  for (const auto* f : {&sol.alpha, &sol.beta}) {
    // D^2 f + lambda(lambda - 1) f = 0
    FormalSeries lam = series(7, 3, {6, 5, 1}, sol.working_precision);  // l0(l0-1) + (2l0-1)t + t^2
    const FormalSeries r = apply_D(apply_D(*f)) + lam * *f;
    CHECK(min_residual(r.truncated(20)) >= 10);
  }
  CHECK(residual_valuation(sol.alpha.coeffs[0].add_exact(-1)) >= 10);
  CHECK(sol.beta.coeffs[0].is_zero());
}

TEST_CASE("wronskian and base point") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const long p = std::vector<long>{5, 7, 11}[rng() % 3];
    long l0 = 2 + static_cast<long>(rng() % (p - 2));
    const long e = static_cast<long>(rng() % 11) - 5;
    const KatzSolutions sol = solve_katz_ode(p, Rational(l0), Rational(e), 40, 10);
    CHECK(min_residual(wronskian_residual(sol)) >= 10);
    const auto hm = period_matrix_hypergeom(sol, Padic::from_integer(p, l0, sol.working_precision), 10);
    CHECK(residual_valuation(hm.matrix(0, 0).add_exact(-1)) >= 10);
    CHECK(residual_valuation(hm.matrix(0, 1).add_exact(e)) >= 10);
    CHECK(hm.matrix(1, 0).is_zero());
    CHECK(residual_valuation(hm.matrix(1, 1).add_exact(-1)) >= 10);
  }
}

TEST_CASE("doubled precision reproduces the period matrix") {
  const long p = 5, n = 8;
  const auto a = solve_katz_ode(p, Rational(2), Rational(1), 60, n);
  const auto b = solve_katz_ode(p, Rational(2), Rational(1), 60, 2 * n);
  const auto ma = period_matrix_hypergeom(a, Padic::from_integer(p, 7, a.working_precision), n);
  const auto mb = period_matrix_hypergeom(b, Padic::from_integer(p, 7, b.working_precision), n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(residual_valuation(ma.matrix(i, j) - mb.matrix(i, j)) >= n);
  CHECK(residual_valuation(ma.matrix.determinant().add_exact(-1)) >= n);
}

TEST_CASE("precision shortfall is reported") {
  const auto sol = solve_katz_ode(3, Rational(2), Rational(0), 40, 10);
  try {
    period_matrix_hypergeom(sol, Padic::from_integer(3, 5, sol.working_precision), 30);
    FAIL("expected PrecisionError");
  } catch (const PrecisionError& e) {
    CHECK(e.achievable() < 30);
    CHECK(e.achievable() > 0);
  }
}

TEST_CASE("hypergeometric domain") {
  CHECK_THROWS_AS(solve_katz_ode(5, Rational(0), Rational(0), 20, 5), DomainError);
  CHECK_THROWS_AS(solve_katz_ode(5, Rational(1), Rational(0), 20, 5), DomainError);
  CHECK_THROWS_AS(solve_katz_ode(5, Rational(6), Rational(0), 20, 5), DomainError);
  const auto sol = solve_katz_ode(5, Rational(2), Rational(0), 20, 5);
  CHECK_THROWS_AS(period_matrix_hypergeom(sol, Padic::from_integer(5, 3, 10), 5), DomainError);
}

TEST_CASE("point counts agree three ways") {
  const std::vector<std::vector<long>> curves{{1, 1, 0, 1}, {0, -1, 0, 1}, {-2, 0, 0, 1}, {3, -4, 1, 1}, {7, 2, -1, 1}};
  for (const auto& c : curves)
    for (long p : {5L, 7L, 11L, 13L, 17L}) {
      std::array<Integer, 4> f{c[0], c[1], c[2], c[3]};
      EllipticCurveW e{f, p, 4};
      if (e.discriminant() % p == 0) continue;
      const long affine = oracle::brute_affine(c, p);
      CHECK(count_points(f, p) == p - affine);
      CHECK(count_affine_points_by_y(f, p) == affine);
    }
}

TEST_CASE("cubic parsing") {
  CHECK(parse_cubic("x^3+x+1") == std::array<Integer, 4>{1, 1, 0, 1});
  CHECK(parse_cubic("x^3 - 2*x^2 + 3*x - 4") == std::array<Integer, 4>{-4, 3, -2, 1});
  CHECK(parse_cubic("x^3-x") == std::array<Integer, 4>{0, -1, 0, 1});
  CHECK_THROWS_AS(parse_cubic("2*x^3+1"), DomainError);
  CHECK_THROWS_AS(parse_cubic("x^2+1"), DomainError);
}

TEST_CASE("frobenius matrix char poly") {
  for (long p : {5L, 7L}) {
    EllipticCurveW e{parse_cubic("x^3+x+1"), p, 5};
    const long a_p = count_points(e.f, p);
    const auto fm = kedlaya_frobenius(e, true);
    CHECK(fm.selftest_passed);
    const auto cert = charpoly_certificate(fm, a_p);
    CHECK(cert.pass());
    CHECK(cert.trace_recovered == std::optional<Rational>(Rational(a_p)));
    CHECK(cert.det_recovered == std::optional<Rational>(Rational(p)));
  }
}

TEST_CASE("certificate detects tampering and ignores transposition") {
  EllipticCurveW e{parse_cubic("x^3-x+2"), 7, 5};
  const long a_p = count_points(e.f, 7);
  FrobeniusMatrix fm = kedlaya_frobenius(e);
  FrobeniusMatrix t = fm;
  t.matrix = fm.matrix.transpose();
  CHECK(charpoly_certificate(t, a_p).pass());
  FrobeniusMatrix bad = fm;
  bad.matrix(0, 0) = bad.matrix(0, 0) + Padic::from_integer(7, 343, 5);
  CHECK_FALSE(charpoly_certificate(bad, a_p).pass());
  CHECK_FALSE(charpoly_certificate(fm, a_p + 1).pass());
}

TEST_CASE("bad reduction is rejected") {
  EllipticCurveW e{parse_cubic("x^3"), 5, 4};
  CHECK_THROWS_AS(e.validate(), DomainError);
  EllipticCurveW small{parse_cubic("x^3+x+1"), 3, 4};
  CHECK_THROWS_AS(small.validate(), DomainError);
}
