#include "periods/cyclotomic.hpp"

#include <algorithm>

namespace periods {

namespace {

void reduce(Integer& a, const Integer& mod) { mpz_mod(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()); }

Padic padic_from_residue(long p, const Integer& x, long abs_prec) {
  if (abs_prec <= 0) return Padic::zero_to_precision(p, abs_prec);
  Integer r = x;
  reduce(r, prime_power(p, abs_prec));
  if (r == 0) return Padic::zero_to_precision(p, abs_prec);
  const long v = valuation(r, p);
  return Padic::from_unit(p, v, r / prime_power(p, v), abs_prec - v);
}

// Fraction-free (Bareiss) determinant of an integer matrix.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

long primitive_root(long p) {
  std::vector<long> factors;
  long n = p - 1;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    factors.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) factors.push_back(n);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : factors) {
      Integer r;
      mpz_powm_ui(r.get_mpz_t(), Integer(g).get_mpz_t(), static_cast<unsigned long>((p - 1) / q),
                  Integer(p).get_mpz_t());
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

void require_odd_prime(long p) {
  if (!is_prime(p) || p == 2) throw DomainError("Eisenstein ring needs an odd prime");
}

}  // namespace

long Eisenstein::coefficient_digits(long p, long m) { return std::max<long>(1, (m + p - 2) / (p - 1)); }

Eisenstein::Eisenstein(long p, long k, long prec, std::vector<Integer> c)
    : p_(p), k_(k), prec_(std::min(prec, (p - 1) * k)), c_(std::move(c)) {
  const Integer mod = prime_power(p_, k_);
  for (auto& x : c_) reduce(x, mod);
}

Eisenstein Eisenstein::zero(long p, long m) {
  require_odd_prime(p);
  return Eisenstein(p, coefficient_digits(p, m), m, std::vector<Integer>(static_cast<std::size_t>(p - 1), 0));
}

Eisenstein Eisenstein::from_integer(long p, const Integer& c, long m) {
  Eisenstein e = zero(p, m);
  e.c_[0] = c;
  reduce(e.c_[0], prime_power(p, e.k_));
  return e;
}

Eisenstein Eisenstein::from_padic(const Padic& c, long m) {
  const long p = c.prime();
  if (!c.is_zero() && c.valuation() < 0) throw DomainError("from_padic: value is not integral");
  // A p-adic value known mod p^A is known mod pi^((p-1)A).
  const long own = c.abs_prec() == kInfinitePrecision ? m : (p - 1) * c.abs_prec();
  const long prec = std::min(m, own);
  Eisenstein e = zero(p, m);
  e.c_[0] = c.residue(std::min(e.k_, c.abs_prec()));
  e.prec_ = std::min(e.prec_, prec);
  return e;
}

Eisenstein Eisenstein::pi(long p, long m) {
  Eisenstein e = zero(p, m);
  e.c_[1] = 1;
  return e;
}

Padic Eisenstein::coefficient(std::size_t i) const { return padic_from_residue(p_, c_.at(i), k_); }

long Eisenstein::valuation() const {
  long best = prec_;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    best = std::min(best, (p_ - 1) * periods::valuation(c_[i], p_) + static_cast<long>(i));
  }
  return best;
}

Eisenstein Eisenstein::with_precision(long m) const {
  Eisenstein e = *this;
  e.prec_ = std::min(prec_, m);
  return e;
}

Eisenstein Eisenstein::operator-() const {
  std::vector<Integer> c = c_;
  for (auto& x : c) x = -x;
  return Eisenstein(p_, k_, prec_, std::move(c));
}

Eisenstein operator+(const Eisenstein& a, const Eisenstein& b) {
  if (a.p_ != b.p_) throw DomainError("Eisenstein prime mismatch");
  std::vector<Integer> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
  return Eisenstein(a.p_, std::min(a.k_, b.k_), std::min(a.prec_, b.prec_), std::move(c));
}

Eisenstein operator-(const Eisenstein& a, const Eisenstein& b) { return a + (-b); }

Eisenstein operator*(const Eisenstein& a, const Eisenstein& b) {
  if (a.p_ != b.p_) throw DomainError("Eisenstein prime mismatch");
  const long p = a.p_;
  const std::size_t n = static_cast<std::size_t>(p - 1);
  std::vector<Integer> full(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) full[i + j] += a.c_[i] * b.c_[j];
  }
  // pi^(p-1) = -p
  for (std::size_t d = full.size() - 1; d >= n; --d) full[d - n] -= p * full[d];
  full.resize(n);
  const long k = std::min(a.k_, b.k_);
  const long prec = std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
  return Eisenstein(p, k, prec, std::move(full));
}

Eisenstein Eisenstein::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Eisenstein result = from_integer(p_, 1, (p_ - 1) * k_);
  Eisenstein base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Eisenstein Eisenstein::inverse() const {
  if (valuation() != 0) throw DomainError("Eisenstein inverse: not a unit");
  const Integer mod = prime_power(p_, k_);
  Integer c0inv;
  mpz_invert(c0inv.get_mpz_t(), c_[0].get_mpz_t(), mod.get_mpz_t());
  Eisenstein x(p_, k_, (p_ - 1) * k_, std::vector<Integer>(c_.size(), 0));
  x.c_[0] = c0inv;
  const Eisenstein two = from_integer(p_, 2, (p_ - 1) * k_);
  Eisenstein exact_self(p_, k_, (p_ - 1) * k_, c_);
  // Newton: error valuation doubles each round.
  for (long v = 1; v < (p_ - 1) * k_; v *= 2) x = x * (two - exact_self * x);
  x.prec_ = prec_;
  return x;
}

Eisenstein operator/(const Eisenstein& a, const Eisenstein& b) { return a * b.inverse(); }

Padic Eisenstein::norm() const {
  const std::size_t n = c_.size();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  Eisenstein basis = from_integer(p_, 1, (p_ - 1) * k_);
  const Eisenstein pi_exact = pi(p_, (p_ - 1) * k_);
  Eisenstein self(p_, k_, (p_ - 1) * k_, c_);
  for (std::size_t j = 0; j < n; ++j) {
    const Eisenstein col = self * basis;
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c_[i];
    basis = basis * pi_exact;
  }
  return padic_from_residue(p_, bareiss_determinant(std::move(m)), std::min(k_, prec_ / (p_ - 1)));
}

Eisenstein zeta_p(long p, long m) {
  require_odd_prime(p);
  if (m < 2) throw DomainError("zeta_p: precision must be >= 2");
  const long k = Eisenstein::coefficient_digits(p, m + 1) + 1;
  const long full = (p - 1) * k;
  const Eisenstein pi = Eisenstein::pi(p, full);
  const Eisenstein one = Eisenstein::from_integer(p, 1, full);

  // zeta = 1 + pi u where g(u) = Phi_p(1 + pi u)/p has a unit derivative:
  // g(u) = 1 - u^(p-1) + sum_{k=2}^{p-1} (C(p,k)/p) pi^(k-1) u^(k-1).
  std::vector<Integer> binom_over_p(static_cast<std::size_t>(p), 0);
  for (long j = 2; j < p; ++j) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
    binom_over_p[static_cast<std::size_t>(j)] = c / p;
  }
  auto g = [&](const Eisenstein& u) {
    Eisenstein acc = one - u.pow(p - 1);
    Eisenstein pu = pi * u;  // (pi u)^(j-1)
    for (long j = 2; j < p; ++j) {
      acc = acc + Eisenstein::from_integer(p, binom_over_p[static_cast<std::size_t>(j)], full) * pu;
      pu = pu * pi * u;
    }
    return acc;
  };
  auto dg = [&](const Eisenstein& u) {
    Eisenstein acc = -(Eisenstein::from_integer(p, p - 1, full) * u.pow(p - 2));
    Eisenstein term = pi;  // pi^(j-1) u^(j-2)
    for (long j = 2; j < p; ++j) {
      acc = acc + Eisenstein::from_integer(p, binom_over_p[static_cast<std::size_t>(j)] * (j - 1), full) * term;
      term = term * pi * u;
    }
    return acc;
  };

  Eisenstein u = one;
  for (int iter = 0; iter < 64; ++iter) {
    const Eisenstein gu = g(u);
    if (gu.is_zero()) break;
    u = u - gu / dg(u);
  }
  const long reached = g(u).valuation() + 1;
  if (reached < m) throw PrecisionError("zeta_p: Newton iteration did not converge", reached);
  return (one + pi * u).with_precision(m);
}

Eisenstein gauss_sum(long p, long a, long m) {
  require_odd_prime(p);
  if (a < 1 || a > p - 2) throw DomainError("gauss_sum: a must lie in [1, p-2]");
  const long k = Eisenstein::coefficient_digits(p, m) + 1;
  const long full = (p - 1) * k;
  const Eisenstein z = zeta_p(p, full);
  Eisenstein sum = Eisenstein::zero(p, full);
  Eisenstein zx = z;
  for (long x = 1; x < p; ++x) {
    const Padic w = teichmuller(Padic::from_integer(p, x, k));
    sum = sum + Eisenstein::from_padic(w.pow(-a), full) * zx;
    zx = zx * z;
  }
  return sum.with_precision(m);
}

Eisenstein gauss_sum_by_generator(long p, long a, long m) {
  require_odd_prime(p);
  if (a < 1 || a > p - 2) throw DomainError("gauss_sum: a must lie in [1, p-2]");
  const long k = Eisenstein::coefficient_digits(p, m) + 1;
  const long full = (p - 1) * k;
  const Eisenstein z = zeta_p(p, full);
  std::vector<Eisenstein> zeta_powers;
  zeta_powers.reserve(static_cast<std::size_t>(p));
  zeta_powers.push_back(Eisenstein::from_integer(p, 1, full));
  for (long x = 1; x < p; ++x) zeta_powers.push_back(zeta_powers.back() * z);

  const long g = primitive_root(p);
  const Padic wg_inv_a = teichmuller(Padic::from_integer(p, g, k)).pow(-a);
  Padic chi = Padic::from_integer(p, 1, k);
  long x = 1;
  Eisenstein sum = Eisenstein::zero(p, full);
  for (long e = 0; e < p - 1; ++e) {
    sum = sum + Eisenstein::from_padic(chi, full) * zeta_powers[static_cast<std::size_t>(x)];
    chi = chi * wg_inv_a;
    x = (x * g) % p;
  }
  return sum.with_precision(m);
}

Eisenstein gauss_sum_conjugate(long p, long a, long m) {
  require_odd_prime(p);
  if (a < 1 || a > p - 2) throw DomainError("gauss_sum: a must lie in [1, p-2]");
  const long k = Eisenstein::coefficient_digits(p, m) + 1;
  const long full = (p - 1) * k;
  const Eisenstein z = zeta_p(p, full);
  std::vector<Eisenstein> zeta_powers;
  zeta_powers.push_back(Eisenstein::from_integer(p, 1, full));
  for (long x = 1; x < p; ++x) zeta_powers.push_back(zeta_powers.back() * z);
  Eisenstein sum = Eisenstein::zero(p, full);
  for (long x = 1; x < p; ++x) {
    const Padic w = teichmuller(Padic::from_integer(p, x, k));
    sum = sum + Eisenstein::from_padic(w.pow(a), full) * zeta_powers[static_cast<std::size_t>(p - x)];
  }
  return sum.with_precision(m);
}

namespace {

long gk_residual_with_sign(long p, long a, long m, int sign) {
  const long digits = Eisenstein::coefficient_digits(p, m) + 1;
  const Eisenstein g = gauss_sum(p, a, m);
  const Padic gamma = gamma_p(Padic::from_rational(p, Rational(Rational(a) / (p - 1)), digits), digits);
  const Eisenstein term = Eisenstein::pi(p, m).pow(a) * Eisenstein::from_padic(gamma, m);
  const Eisenstein r = sign > 0 ? g + term : g - term;
  return r.valuation();
}

}  // namespace

int gross_koblitz_convention() {
  static const int sign = [] {
    constexpr long p = 5, a = 1, m = 16;
    for (int s : {1, -1})
      if (gk_residual_with_sign(p, a, m, s) >= m) return s;
    throw Error("Gross-Koblitz convention check failed for p = 5, a = 1");
  }();
  return sign;
}

GrossKoblitzResult gross_koblitz_residual(long p, long a, long m) {
  require_odd_prime(p);
  if (a < 1 || a > p - 2) throw DomainError("gross_koblitz_residual: a must lie in [1, p-2]");
  return GrossKoblitzResult{p, a, m, gk_residual_with_sign(p, a, m, gross_koblitz_convention())};
}

}  // namespace periods
