#include "periods/gamma.hpp"

#include <vector>

namespace periods {

namespace {

using Poly = std::vector<Integer>;  // coefficients mod p^n, low degree first

void reduce(Integer& a, const Integer& mod) { mpz_mod(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()); }

Integer eval(const Poly& g, const Integer& s, const Integer& mod) {
  Integer acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    acc = acc * s + *it;
    reduce(acc, mod);
  }
  return acc;
}

// g(Y + shift) truncated to degree < n.
Poly taylor_shift(const Poly& g, long shift, long n, const Integer& mod) {
  Poly out(g.size(), 0);
  // Horner in the ring of polynomials: out = (...(g_d)(Y+c) + g_{d-1})...
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    // out *= (Y + shift)
    for (std::size_t k = out.size() - 1; k > 0; --k) {
      out[k] = out[k - 1] + out[k] * shift;
      reduce(out[k], mod);
    }
    out[0] = out[0] * shift + *it;
    reduce(out[0], mod);
  }
  if (static_cast<long>(out.size()) > n) out.resize(static_cast<std::size_t>(n));
  return out;
}

Poly mul_trunc(const Poly& a, const Poly& b, long n, const Integer& mod) {
  const std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1, static_cast<std::size_t>(n));
  Poly out(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  for (auto& c : out) reduce(c, mod);
  return out;
}

// Given H(Y), return G(s) = H(p s) mod p^n (coefficients of degree >= n vanish).
Poly scale_by_p(Poly h, long p, long n, const Integer& mod) {
  if (static_cast<long>(h.size()) > n) h.resize(static_cast<std::size_t>(n));
  Integer scale = 1;
  for (auto& c : h) {
    c *= scale;
    reduce(c, mod);
    scale *= p;
  }
  while (h.size() > 1 && h.back() == 0) h.pop_back();
  return h;
}

void require_odd_prime(long p) {
  if (!is_prime(p)) throw DomainError("gamma_p: p is not prime");
  if (p == 2) throw DomainError("gamma_p: p = 2 is not supported");
}

}  // namespace

Integer unit_factorial(long p, const Integer& count, long n) {
  require_odd_prime(p);
  if (n < 1) throw DomainError("unit_factorial: precision must be >= 1");
  const Integer mod = prime_power(p, n);
  Integer result = 1;
  if (count <= 0) return result;

  // Tail below the last multiple of p.
  Integer q = count / p;
  for (Integer j = q * p + 1; j <= count; ++j) {
    result *= j;
    reduce(result, mod);
  }

  // Level 0: units of [p s + 1, p s + p - 1] as a polynomial in s.
  Poly h{1};
  for (long i = 1; i < p; ++i) h = mul_trunc(h, Poly{Integer(i), Integer(1)}, n, mod);
  Poly g = scale_by_p(std::move(h), p, n, mod);

  // Invariant: result * prod_{s < q} g(s) is the wanted product.
  while (q > 0) {
    const Integer q_next = q / p;
    for (Integer s = q_next * p; s < q; ++s) {
      result *= eval(g, s, mod);
      reduce(result, mod);
    }
    if (q_next == 0) break;
    // Next level: prod_{i < p} g(p s + i).
    Poly acc{1};
    for (long i = 0; i < p; ++i) acc = mul_trunc(acc, taylor_shift(g, i, n, mod), n, mod);
    g = scale_by_p(std::move(acc), p, n, mod);
    q = q_next;
  }
  return result;
}

Integer gamma_p_direct(long p, const Integer& m, long n) {
  require_odd_prime(p);
  if (m < 1) throw DomainError("gamma_p_direct: m must be positive");
  const Integer mod = prime_power(p, n);
  Integer acc = 1;
  for (Integer j = 1; j < m; ++j) {
    if (j % p == 0) continue;
    acc *= j;
    reduce(acc, mod);
  }
  if (m % 2 == 1) acc = mod - acc;
  reduce(acc, mod);
  return acc;
}

Padic gamma_p(const Padic& x, long n) {
  const long p = x.prime();
  require_odd_prime(p);
  if (n < 1) throw DomainError("gamma_p: precision must be >= 1");
  if (!x.is_zero() && x.valuation() < 0) throw DomainError("gamma_p: argument is not integral");
  const long prec = std::min(n, x.abs_prec());
  if (prec < 1) throw PrecisionError("gamma_p: argument known to insufficient precision", prec);
  const Integer mod = prime_power(p, prec);
  Integer m = x.residue(prec);
  if (m == 0) m = mod;
  Integer v = unit_factorial(p, m - 1, prec);
  if (m % 2 == 1) v = mod - v;
  return Padic::from_unit(p, 0, v, prec);
}

GammaValue evaluate_gamma(const Padic& x, long n) {
  Padic v = gamma_p(x, n);
  const long prec = v.rel_prec();
  return GammaValue{x, std::move(v), x.prime(), prec};
}

Residual check_translation(const Padic& x, long n) {
  const Padic gx = gamma_p(x, n);
  const Padic gx1 = gamma_p(x.is_exact_zero() ? Padic::from_integer(x.prime(), 1, n) : x.add_exact(1), n);
  const Padic sigma = x.is_unit() ? -x : Padic::from_integer(x.prime(), -1, n);
  const Padic r = gx1 - sigma * gx;
  return Residual{residual_valuation(r), n};
}

ReflectionResidual check_reflection(const Padic& x, long n) {
  const long p = x.prime();
  const Padic one = Padic::from_integer(p, 1, n);
  const Padic prod = gamma_p(x, n) * gamma_p(one - x, n);
  const long plus = residual_valuation(prod - one);
  const long minus = residual_valuation(prod + one);
  ReflectionResidual out;
  out.sign = plus >= minus ? 1 : -1;
  out.residual = Residual{std::max(plus, minus), n};
  if (out.residual.valuation < 1)
    throw Error("check_reflection: Gamma_p(x) Gamma_p(1-x) is not +-1 modulo p");
  return out;
}

}  // namespace periods
