#include "periods/kedlaya.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

#include "periods/reconstruct.hpp"

namespace periods {

namespace {

using Poly = std::vector<Padic>;
using IntPoly = std::vector<Integer>;

Padic to_padic(long p, const Rational& x, long w) {
  if (x == 0) return Padic::exact_zero(p);
  const long v = valuation(x, p);
  if (v >= w) return Padic::zero_to_precision(p, w);
  return Padic::from_rational(p, x, w - v);
}

IntPoly int_mul(const IntPoly& a, const IntPoly& b, const Integer& mod) {
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  return c;
}

Poly poly_add(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Padic::exact_zero(b.front().prime()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  const long p = a.front().prime();
  Poly c(a.size() + b.size() - 1, Padic::exact_zero(p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Poly derivative(const Poly& a) {
  const long p = a.front().prime();
  if (a.size() <= 1) return Poly{Padic::exact_zero(p)};
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i].mul_exact(static_cast<long>(i)));
  return d;
}

// Quotient and remainder by the monic cubic g.
void divmod_monic(const Poly& a, const Poly& g, Poly& q, Poly& r) {
  const long p = a.front().prime();
  const std::size_t dg = g.size() - 1;
  r = a;
  if (r.size() <= dg) {
    q = Poly{Padic::exact_zero(p)};
    r.resize(dg, Padic::exact_zero(p));
    return;
  }
  q.assign(r.size() - dg, Padic::exact_zero(p));
  for (std::size_t k = r.size() - 1; k >= dg; --k) {
    const Padic c = r[k];
    q[k - dg] = c;
    if (!c.is_exact_zero())
      for (std::size_t j = 0; j <= dg; ++j) r[k - dg + j] -= c * g[j];
    if (k == dg) break;
  }
  r.erase(r.begin() + static_cast<long>(dg), r.end());
}

// Polynomials u, v over Q with u f + v f' = 1.
void bezout(const std::array<Integer, 4>& f, std::vector<Rational>& u, std::vector<Rational>& v) {
  using QPoly = std::vector<Rational>;
  auto trim = [](QPoly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
  };
  auto sub_scaled = [&](QPoly a, const QPoly& b, const Rational& c, std::size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
    return a;
  };
  QPoly r0(f.begin(), f.end()), r1{Rational(f[1]), Rational(2 * f[2]), Rational(3 * f[3])};
  QPoly s0{1}, s1{0}, t0{0}, t1{1};
  trim(r0);
  trim(r1);
  while (!(r1.size() == 1 && r1[0] == 0)) {
    QPoly r = r0, s = s0, t = t0;
    while (r.size() >= r1.size() && !(r.size() == 1 && r[0] == 0)) {
      const std::size_t shift = r.size() - r1.size();
      const Rational c = r.back() / r1.back();
      r = sub_scaled(r, r1, c, shift);
      s = sub_scaled(s, s1, c, shift);
      t = sub_scaled(t, t1, c, shift);
    }
    r0 = r1;
    s0 = s1;
    t0 = t1;
    r1 = r;
    s1 = s;
    t1 = t;
  }
  if (r0.size() != 1) throw DomainError("kedlaya: f has a repeated root");
  for (auto& x : s0) x /= r0[0];
  for (auto& x : t0) x /= r0[0];
  u = s0;
  v = t0;
}

// p C(-1/2, k) = p (-1)^k binom(2k, k) / 4^k
Rational binomial_coefficient(long p, long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), 2 * k, k);
  Rational c(b, Integer(1) << (2 * k));
  c.canonicalize();
  if (k % 2 == 1) c = -c;
  return c * p;
}

long floor_log(long p, long n) {
  long k = 0;
  for (long q = p; q <= n; q *= p) ++k;
  return k;
}

}  // namespace

void EllipticCurveW::validate() const {
  if (!is_prime(p) || p < 5) throw DomainError("kedlaya: p must be a prime >= 5");
  if (f[3] != 1) throw DomainError("kedlaya: f must be monic of degree 3");
  if (precision < 1) throw DomainError("kedlaya: precision must be >= 1");
  if (discriminant() % p == 0) throw DomainError("kedlaya: bad reduction at p = " + std::to_string(p));
}

Integer EllipticCurveW::discriminant() const {
  const Integer& a = f[2];
  const Integer& b = f[1];
  const Integer& c = f[0];
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

std::string EllipticCurveW::str() const {
  std::string out = "x^3";
  const char* mono[] = {"", "*x", "*x^2"};
  for (int i = 2; i >= 0; --i) {
    if (f[i] == 0) continue;
    out += (f[i] > 0 ? "+" : "-");
    const Integer a = abs(f[i]);
    if (i == 0 || a != 1)
      out += a.get_str() + mono[i];
    else
      out += std::string(mono[i]).substr(1);
  }
  return out;
}

std::array<Integer, 4> parse_cubic(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw DomainError("parse_cubic: empty polynomial");
  std::array<Integer, 4> f{0, 0, 0, 0};
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    Integer coeff = j > i ? Integer(s.substr(i, j - i)) : Integer(1);
    const bool had_digits = j > i;
    i = j;
    long degree = 0;
    if (i < s.size() && s[i] == '*') {
      if (!had_digits) throw DomainError("parse_cubic: malformed term in '" + text + "'");
      ++i;
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw DomainError("parse_cubic: missing exponent in '" + text + "'");
        degree = std::stol(s.substr(i, k - i));
        i = k;
      }
    } else if (!had_digits) {
      throw DomainError("parse_cubic: malformed term in '" + text + "'");
    }
    if (degree > 3) throw DomainError("parse_cubic: degree exceeds 3 in '" + text + "'");
    f[degree] += sign * coeff;
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw DomainError("parse_cubic: unexpected '" + s.substr(i, 1) + "'");
  }
  if (f[3] != 1) throw DomainError("parse_cubic: expected a monic cubic, got '" + text + "'");
  return f;
}

long count_points(const std::array<Integer, 4>& f, long p) {
  EllipticCurveW{f, p, 1}.validate();
  long sum = 0;
  for (long x = 0; x < p; ++x) {
    const Integer fx = ((f[3] * x + f[2]) * x + f[1]) * x + f[0];
    sum += mpz_legendre(Integer(((fx % p) + p) % p).get_mpz_t(), Integer(p).get_mpz_t());
  }
  const long a_p = -sum;
  if (a_p * a_p > 4 * p) throw Error("count_points: Weil bound violated");
  return a_p;
}

long count_affine_points_by_y(const std::array<Integer, 4>& f, long p) {
  std::vector<long> fx(p);
  for (long x = 0; x < p; ++x) {
    Integer v = ((f[3] * x + f[2]) * x + f[1]) * x + f[0];
    fx[x] = Integer(((v % p) + p) % p).get_si();
  }
  long count = 0;
  for (long y = 0; y < p; ++y) {
    const long sq = y * y % p;
    count += std::count(fx.begin(), fx.end(), sq);
  }
  return count;
}

long kedlaya_terms(long p, long n) {
  // Term k starts at valuation k + 1 and loses at most
  // floor(log_p(p (2k+1))) + 1 digits in the reduction.
  auto may_matter = [&](long k) { return k + 1 - floor_log(p, p * (2 * k + 1)) - 1 < n; };
  long k = 0;
  while (may_matter(k + 1)) ++k;
  return k + 1;
}

PeriodMatrix kedlaya_matrix(const EllipticCurveW& curve, long w, long terms) {
  curve.validate();
  const long p = curve.p;
  const Integer mod = prime_power(p, w);

  Poly f, fprime;
  for (int i = 0; i < 4; ++i) f.push_back(to_padic(p, Rational(curve.f[i]), w));
  fprime = derivative(f);
  std::vector<Rational> uq, vq;
  bezout(curve.f, uq, vq);
  Poly v;
  for (const auto& c : vq) {
    if (c != 0 && valuation(c, p) < 0) throw DomainError("kedlaya: f and f' are not coprime mod p");
    v.push_back(to_padic(p, c, w));
  }

  // E = f(x^p) - f(x)^p
  IntPoly fint(curve.f.begin(), curve.f.end());
  IntPoly fp{1};
  for (long i = 0; i < p; ++i) fp = int_mul(fp, fint, mod);
  IntPoly e(3 * p + 1, 0);
  for (int i = 0; i < 4; ++i) e[i * p] += curve.f[i];
  for (std::size_t i = 0; i < fp.size(); ++i) e[i] -= fp[i];
  for (auto& x : e) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());

  PeriodMatrix out(p, 2, 2);
  for (long col = 0; col < 2; ++col) {
    // pole level s stands for dx / y^(2s+1)
    std::map<long, Poly, std::greater<>> levels;
    IntPoly ek{1};
    for (long k = 0; k < terms; ++k) {
      if (k > 0) ek = int_mul(ek, e, mod);
      const Padic c = to_padic(p, binomial_coefficient(p, k), w);
      const long shift = p * (col + 1) - 1;
      Poly term(ek.size() + shift, Padic::exact_zero(p));
      for (std::size_t i = 0; i < ek.size(); ++i)
        if (ek[i] != 0) term[i + shift] = c * to_padic(p, Rational(ek[i]), w);
      const long s = (p * (2 * k + 1) - 1) / 2;
      auto it = levels.find(s);
      if (it == levels.end())
        levels.emplace(s, std::move(term));
      else
        it->second = poly_add(it->second, term);
    }
    // A dx/y^(2s+1) with A = R f + S f' is cohomologous to
    // (R + 2 S' / (2s-1)) dx/y^(2s-1).
    while (!levels.empty() && levels.begin()->first > 0) {
      const long s = levels.begin()->first;
      Poly a = std::move(levels.begin()->second);
      levels.erase(levels.begin());
      Poly q, sr, r, rem;
      divmod_monic(poly_mul(a, v), f, q, sr);
      Poly num = a;
      const Poly sf = poly_mul(sr, fprime);
      num.resize(std::max(num.size(), sf.size()), Padic::exact_zero(p));
      for (std::size_t i = 0; i < sf.size(); ++i) num[i] -= sf[i];
      divmod_monic(num, f, r, rem);
      Poly ds = derivative(sr);
      for (auto& x : ds) x = x.mul_exact(2).div_exact(2 * s - 1);
      Poly next = poly_add(r, ds);
      auto it = levels.find(s - 1);
      if (it == levels.end())
        levels.emplace(s - 1, std::move(next));
      else
        it->second = poly_add(it->second, next);
    }
    Poly a = levels.empty() ? Poly{Padic::exact_zero(p)} : levels.begin()->second;
    // d(x^k y) = (k x^(k-1) f + x^k f' / 2) dx/y has leading term
    // (2k+3)/2 x^(k+2).
    for (long j = static_cast<long>(a.size()) - 1; j >= 2; --j) {
      const Padic c = a[j];
      if (c.is_exact_zero()) continue;
      const long k = j - 2;
      const Padic scale = c.mul_exact(2).div_exact(2 * j - 1);
      Poly exact(j + 1, Padic::exact_zero(p));
      for (int i = 0; i < 4; ++i)
        if (k >= 1) exact[k - 1 + i] += f[i].mul_exact(k);
      for (int i = 0; i < 3; ++i) exact[k + i] += fprime[i].div_exact(2);
      for (long i = 0; i <= j; ++i) a[i] -= scale * exact[i];
    }
    a.resize(2, Padic::exact_zero(p));
    out(0, col) = a[0];
    out(1, col) = a[1];
  }
  out.row_labels = {"dx/y", "x dx/y"};
  out.col_labels = {"F(dx/y)", "F(x dx/y)"};
  return out;
}

FrobeniusMatrix kedlaya_frobenius(const EllipticCurveW& curve, bool selftest) {
  curve.validate();
  const long n = curve.precision;
  const long terms = kedlaya_terms(curve.p, n);
  long w = n + terms + 5;
  PeriodMatrix m(curve.p, 2, 2);
  long achieved = 0;
  for (int attempt = 0;; ++attempt) {
    m = kedlaya_matrix(curve, w, terms);
    achieved = kInfinitePrecision;
    for (const auto& x : m.entries()) achieved = std::min(achieved, x.abs_prec());
    if (achieved >= n) break;
    if (attempt == 6) throw PrecisionError("kedlaya: working precision did not suffice", achieved);
    w += n - achieved + 2;
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = m(i, j).truncate_abs(n);

  FrobeniusMatrix out{m, curve, n, w, terms, false, false};
  if (selftest) {
    out.selftest_run = true;
    const PeriodMatrix check = kedlaya_matrix(curve, w + terms + 5, 2 * terms);
    out.selftest_passed = (m - check).min_valuation() >= n;
    if (!out.selftest_passed) throw PrecisionError("kedlaya: precision buffer exhausted (self-test disagreement)", achieved);
  }
  return out;
}

CharpolyCertificate charpoly_certificate(const FrobeniusMatrix& m, long a_p) {
  const long p = m.curve.p;
  CharpolyCertificate c;
  c.required = m.precision;
  const Padic trace = m.matrix.trace();
  const Padic det = m.matrix.determinant();
  c.trace_valuation = residual_valuation(trace.add_exact(-a_p));
  c.det_valuation = residual_valuation(det.add_exact(-p));
  // |a_p| <= 2 sqrt(p) < p and det = p bound both heights by p.
  const Integer height = p;
  try {
    c.trace_recovered = rational_reconstruct(trace, height);
    c.det_recovered = rational_reconstruct(det, height);
  } catch (const PrecisionError&) {
  }
  return c;
}

}  // namespace periods
