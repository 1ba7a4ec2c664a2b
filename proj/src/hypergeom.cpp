#include "periods/hypergeom.hpp"

#include <algorithm>
#include <climits>

namespace periods {

namespace {

constexpr long kNoBound = LONG_MAX / 4;

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

long value_bound(const Padic& x) {
  if (x.is_exact_zero()) return kNoBound;
  return x.valuation();
}

FormalSeries like(const FormalSeries& f, long order) {
  FormalSeries g;
  g.p = f.p;
  g.lambda0 = f.lambda0;
  g.coeffs.assign(static_cast<std::size_t>(std::max(order, -1L) + 1), Padic::exact_zero(f.p));
  g.growth = f.growth;
  return g;
}

void check_compatible(const FormalSeries& a, const FormalSeries& b) {
  if (a.p != b.p) throw DomainError("FormalSeries: mixed primes");
  if (compare(a.lambda0, b.lambda0) == Agreement::distinct) throw DomainError("FormalSeries: different base points");
}

}  // namespace

long FormalSeries::precision() const {
  long out = kInfinitePrecision;
  for (const auto& c : coeffs) out = std::min(out, c.abs_prec());
  return out;
}

FormalSeries FormalSeries::derivative() const {
  FormalSeries g = like(*this, order() - 1);
  for (long n = 0; n < order(); ++n) g.coeffs[n] = coeffs[n + 1].mul_exact(n + 1);
  // floor((n+1)/(p-1)) exceeds floor(n/(p-1)) by at most one.
  if (g.growth.offset != kNoBound) g.growth.offset -= 1;
  return g;
}

FormalSeries FormalSeries::truncated(long n) const {
  FormalSeries g = *this;
  if (n < order()) g.coeffs.resize(static_cast<std::size_t>(n + 1), Padic::exact_zero(p));
  return g;
}

long FormalSeries::tail_bound(long s) const {
  if (growth.offset == kNoBound) return kInfinitePrecision;
  const long n = order() + 1;
  // offset + n s - floor(n/(p-1)) is nondecreasing in n once s >= 1.
  return growth.offset + n * s - floor_div(n, p - 1);
}

Padic FormalSeries::evaluate(const Padic& t) const {
  if (t.prime() != p) throw DomainError("evaluate: prime mismatch");
  if (coeffs.empty()) throw DomainError("evaluate: empty series");
  if (t.is_exact_zero()) return coeffs[0];
  const long s = t.valuation();
  if (s < 1) throw DomainError("evaluate: point outside the disc v(t) >= 1");
  Padic acc = coeffs.back();
  for (long n = order() - 1; n >= 0; --n) acc = acc * t + coeffs[n];
  return acc.truncate_abs(tail_bound(s));
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  check_compatible(a, b);
  FormalSeries g = like(a, std::min(a.order(), b.order()));
  for (long n = 0; n <= g.order(); ++n) g.coeffs[n] = a.coeffs[n] + b.coeffs[n];
  g.growth.offset = std::min(a.growth.offset, b.growth.offset);
  return g;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
  check_compatible(a, b);
  FormalSeries g = like(a, std::min(a.order(), b.order()));
  for (long n = 0; n <= g.order(); ++n) g.coeffs[n] = a.coeffs[n] - b.coeffs[n];
  g.growth.offset = std::min(a.growth.offset, b.growth.offset);
  return g;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  check_compatible(a, b);
  FormalSeries g = like(a, std::min(a.order(), b.order()));
  for (long n = 0; n <= g.order(); ++n) {
    Padic acc = Padic::exact_zero(a.p);
    for (long i = 0; i <= n; ++i) acc += a.coeffs[i] * b.coeffs[n - i];
    g.coeffs[n] = acc;
  }
  if (a.growth.offset == kNoBound || b.growth.offset == kNoBound)
    g.growth.offset = kNoBound;
  else
    g.growth.offset = a.growth.offset + b.growth.offset;
  return g;
}

FormalSeries apply_D(const FormalSeries& f) {
  const FormalSeries d = f.derivative();
  const Padic& l0 = f.lambda0;
  const Padic c0 = l0 * l0.add_exact(-1);
  const Padic c1 = l0.mul_exact(2).add_exact(-1);
  FormalSeries g = like(d, d.order());
  for (long n = 0; n <= d.order(); ++n) {
    Padic acc = c0 * d.coeffs[n];
    if (n >= 1) acc += c1 * d.coeffs[n - 1];
    if (n >= 2) acc += d.coeffs[n - 2];
    g.coeffs[n] = acc;
  }
  return g;
}

FormalSeries solve_with_data(const Padic& lambda0, const Padic& x0, const Padic& x1, long order) {
  const long p = lambda0.prime();
  if (p == 2) throw DomainError("solve_katz_ode: p must be odd");
  if (x0.prime() != p || x1.prime() != p) throw DomainError("solve_katz_ode: prime mismatch");
  if (order < 1) throw DomainError("solve_katz_ode: order must be >= 1");
  if (lambda0.is_zero() || lambda0.valuation() < 0) throw DomainError("solve_katz_ode: lambda0 must be integral");
  const Padic c0 = lambda0 * lambda0.add_exact(-1);
  if (!c0.is_unit()) throw DomainError("solve_katz_ode: lambda0(lambda0 - 1) must be a unit");
  if (value_bound(x0) < 0 || value_bound(x1) < 0) throw DomainError("solve_katz_ode: initial data must be integral");
  const Padic c1 = lambda0.mul_exact(2).add_exact(-1);

  FormalSeries f;
  f.p = p;
  f.lambda0 = lambda0;
  f.coeffs.assign(static_cast<std::size_t>(order + 1), Padic::exact_zero(p));
  f.coeffs[0] = x0;
  f.coeffs[1] = x1 / c0;
  // c0 (n+1)(n+2) a_{n+2} = -c1 (n+1)^2 a_{n+1} - (n^2+n+1) a_n
  for (long n = 0; n + 2 <= order; ++n) {
    const Padic num = c1 * f.coeffs[n + 1].mul_exact((n + 1) * (n + 1)) + f.coeffs[n].mul_exact(n * n + n + 1);
    f.coeffs[n + 2] = -(num / c0).div_exact((n + 1) * (n + 2));
  }
  // a_n n! is integral, so v(a_n) >= min(v(a_0), v(a_1)) - v_p(n!).
  f.growth.offset = std::min(value_bound(x0), value_bound(f.coeffs[1]));
  return f;
}

KatzSolutions solve_katz_ode(const Padic& lambda0, const Padic& e, long order) {
  const long p = lambda0.prime();
  if (lambda0.is_zero() || lambda0.valuation() < 0) throw DomainError("solve_katz_ode: lambda0 must be integral");
  const long prec = lambda0.abs_prec();
  const Padic one = Padic::from_integer(p, 1, prec);
  KatzSolutions sol{solve_with_data(lambda0, one, e, order), solve_with_data(lambda0, Padic::exact_zero(p), one, order),
                    e, prec};
  return sol;
}

KatzSolutions solve_katz_ode(long p, const Rational& lambda0, const Rational& e, long order, long n) {
  if (!is_prime(p)) throw DomainError("solve_katz_ode: p must be prime");
  if (n < 1) throw DomainError("solve_katz_ode: precision must be >= 1");
  long w = n + 2 * (order / (p - 1)) + 4;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Padic l0 = Padic::from_rational(p, lambda0, w);
    const Padic ep = e == 0 ? Padic::exact_zero(p) : Padic::from_rational(p, e, w);
    KatzSolutions sol = solve_katz_ode(l0, ep, order);
    const long got = wronskian_residual(sol).precision();
    if (got >= n) return sol;
    w += (n - got) + 2;
  }
  throw PrecisionError("solve_katz_ode: working precision did not converge", n);
}

FormalSeries wronskian_residual(const KatzSolutions& sol) {
  FormalSeries w = sol.alpha * apply_D(sol.beta) - sol.beta * apply_D(sol.alpha);
  w.coeffs[0] = w.coeffs[0].add_exact(-1);
  return w.truncated(sol.alpha.order() - 2);
}

HypergeomPeriodMatrix period_matrix_hypergeom(const KatzSolutions& sol, const Padic& lambda, long n) {
  const long p = sol.alpha.p;
  if (lambda.prime() != p) throw DomainError("period_matrix_hypergeom: prime mismatch");
  const Padic t = lambda - sol.alpha.lambda0;
  if (!t.is_exact_zero() && t.valuation() < 1)
    throw DomainError("period_matrix_hypergeom: lambda must satisfy v(lambda - lambda0) >= 1");
  const Padic a = sol.alpha.evaluate(t);
  const Padic b = sol.beta.evaluate(t);
  const Padic da = apply_D(sol.alpha).evaluate(t);
  const Padic db = apply_D(sol.beta).evaluate(t);
  const long achieved = std::min({a.abs_prec(), b.abs_prec(), da.abs_prec(), db.abs_prec()});
  if (achieved < n)
    throw PrecisionError("period_matrix_hypergeom: requested " + std::to_string(n) + " digits, achievable " +
                             std::to_string(achieved),
                         achieved);
  PeriodMatrix m(p, 2, 2);
  m(0, 0) = db.truncate_abs(n);
  m(0, 1) = (-da).truncate_abs(n);
  m(1, 0) = (-b).truncate_abs(n);
  m(1, 1) = a.truncate_abs(n);
  m.row_labels = {"omega", "nabla omega"};
  m.col_labels = {"gamma_1", "gamma_2"};
  return HypergeomPeriodMatrix{m, lambda, sol.alpha.lambda0, sol.e, sol.alpha.order(), n};
}

}  // namespace periods
