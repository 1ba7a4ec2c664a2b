#include "periods/cm_periods.hpp"

#include <cstdlib>
#include <numeric>
#include <optional>

#include "periods/gamma.hpp"

namespace periods {

bool is_squarefree(long n) {
  if (n <= 0) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return true;
}

long squarefree_kernel(long n) {
  if (n <= 0) throw DomainError("squarefree_kernel: n must be positive");
  long out = 1;
  for (long q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e % 2 == 1) out *= q;
  }
  return out * n;
}

int kronecker(long a, long n) { return mpz_si_kronecker(a, Integer(n).get_mpz_t()); }

long class_number(long disc) {
  if (disc >= 0 || ((disc % 4) + 4) % 4 > 1) throw DomainError("class_number: not a negative discriminant");
  long count = 0;
  // Reduced: |b| <= a <= c, with b >= 0 when |b| == a or a == c.
  for (long a = 1; 3 * a * a <= -disc; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++count;
    }
  return count;
}

ImagQuadData imag_quad_data(long d) {
  if (!is_squarefree(d)) throw DomainError("imag_quad_data: d must be squarefree and positive");
  ImagQuadData q;
  q.d = d;
  q.disc = (d % 4 == 3) ? -d : -4 * d;
  q.h = class_number(q.disc);
  q.w = q.disc == -4 ? 4 : q.disc == -3 ? 6 : 2;
  return q;
}

int ImagQuadData::epsilon(long u) const {
  const int k = kronecker(disc, u);
  if (k == 0) throw DomainError("epsilon: u not coprime to the discriminant");
  return k == 1 ? 0 : 1;
}

Rational bracket(long u, long d) {
  if (d <= 0) throw DomainError("bracket: modulus must be positive");
  if (std::gcd(std::labs(u), d) != 1) throw DomainError("bracket: u not coprime to d");
  long r = ((u % d) + d) % d;
  if (r == 0) r = d;
  return Rational(r, d);
}

Rational bracket(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(q);
  if (r == 0) r = 1;
  return r;
}

bool is_ramified(long p, long d) {
  if (!is_prime(p)) throw DomainError("is_ramified: p must be prime");
  if (!is_squarefree(d)) throw DomainError("is_ramified: d must be squarefree and positive");
  const long disc = (d % 4 == 3) ? d : 4 * d;
  return disc % p == 0;
}

void collapse(ExponentiatedProduct& prod, long p, long n) {
  long l = 1;
  for (const auto& f : prod.factors) l = std::lcm(l, f.exponent.get_den().get_si());
  prod.collapse_power = l;
  std::optional<Padic> acc;
  for (const auto& f : prod.factors) {
    const Rational e = f.exponent * l;
    if (e == 0) continue;
    const Padic term = f.base.pow(e.get_num().get_si());
    acc = acc ? *acc * term : term;
  }
  prod.collapsed = acc ? *acc : Padic::from_integer(p, 1, n);
}

ExponentiatedProduct cm_period_unramified(long d, long p, long n) {
  if (!is_prime(p) || p == 2) throw DomainError("cm_period_unramified: p must be an odd prime");
  if (d % p == 0) throw DomainError("cm_period_unramified: p divides d");
  const ImagQuadData q = imag_quad_data(d);
  if (is_ramified(p, d)) throw DomainError("cm_period_unramified: p ramifies in Q(sqrt(-d))");
  const long m = q.modulus();
  ExponentiatedProduct prod;
  for (long u = 1; u < m; ++u) {
    if (std::gcd(u, m) != 1) continue;
    const Rational arg = bracket(p * u, m);
    Rational exponent(-q.epsilon(u) * q.w, 4 * q.h);
    exponent.canonicalize();
    prod.factors.push_back({u, arg, gamma_p(Padic::from_rational(p, arg, n), n), exponent});
  }
  collapse(prod, p, n);
  return prod;
}

ExponentiatedProduct cm_period_ramified_p3(long m, long n) {
  const long p = 3;
  if (m <= 0 || m % 3 == 0) throw DomainError("cm_period_ramified_p3: m must be positive and prime to 3");
  const ImagQuadData q = imag_quad_data(squarefree_kernel(3 * m));
  ExponentiatedProduct prod;
  for (long u = 1; u <= m; ++u) {
    if (std::gcd(u, m) != 1) continue;
    const Rational arg = bracket(u, m);
    Rational exponent(kronecker(m, u) * q.w, 2 * q.h);
    exponent.canonicalize();
    prod.factors.push_back({u, arg, gamma_p(Padic::from_rational(p, arg, n), n), exponent});
  }
  collapse(prod, p, n);
  return prod;
}

}  // namespace periods
