#include "periods/padic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace periods {

namespace {

// Number of terms we are willing to sum before declaring a precision
// request unattainable.
constexpr long kSeriesTermCap = 200000;

Integer mod_positive(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("inverse_mod: not invertible");
  return r;
}

long floor_log(long p, long n) {
  long k = 0;
  for (long q = p; q <= n; q *= p) {
    ++k;
    if (q > std::numeric_limits<long>::max() / p) break;
  }
  return k;
}

void require_same_prime(const Padic& a, const Padic& b) {
  if (a.prime() != b.prime()) throw DomainError("p-adic prime mismatch");
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  if (n < (1L << 40)) {
    for (long d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }
  return mpz_probab_prime_p(Integer(n).get_mpz_t(), 30) != 0;
}

Integer prime_power(long p, long n) {
  if (n < 0) throw DomainError("prime_power: negative exponent");
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
  return r;
}

long valuation(const Integer& n, long p) {
  if (n == 0) throw DomainError("valuation of zero");
  Integer m = n;
  Integer pp = p;
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rational& x, long p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw DomainError("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw DomainError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Padic Padic::exact_zero(long p) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  return Padic(p, State::exact_zero, 0, 0, 0);
}

Padic Padic::zero_to_precision(long p, long abs_prec) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  return Padic(p, State::zero_to_precision, abs_prec, 0, 0);
}

Padic Padic::from_unit(long p, long v, const Integer& u, long rel_prec) {
  if (rel_prec < 1) throw DomainError("relative precision must be >= 1");
  Integer r = mod_positive(u, prime_power(p, rel_prec));
  if (r % p == 0) throw DomainError("from_unit: unit part divisible by p");
  return Padic(p, State::nonzero, v, std::move(r), rel_prec);
}

Padic Padic::from_rational(long p, const Rational& x, long rel_prec) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (rel_prec < 1) throw DomainError("relative precision must be >= 1");
  if (x == 0) return exact_zero(p);
  Integer num = x.get_num();
  Integer den = x.get_den();
  Integer pp = p;
  long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()));
  Integer mod = prime_power(p, rel_prec);
  Integer u = mod_positive(num * inverse_mod(den, mod), mod);
  return Padic(p, State::nonzero, vn - vd, std::move(u), rel_prec);
}

Padic Padic::from_integer(long p, const Integer& x, long rel_prec) {
  return from_rational(p, Rational(x), rel_prec);
}

long Padic::valuation() const {
  switch (state_) {
    case State::exact_zero: return kInfinitePrecision;
    case State::zero_to_precision: return val_;
    case State::nonzero: break;
  }
  return val_;
}

long Padic::abs_prec() const {
  switch (state_) {
    case State::exact_zero: return kInfinitePrecision;
    case State::zero_to_precision: return val_;
    case State::nonzero: break;
  }
  return val_ + rel_;
}

std::vector<long> Padic::digits() const {
  std::vector<long> out;
  if (state_ != State::nonzero) return out;
  Integer u = unit_;
  out.reserve(static_cast<std::size_t>(rel_));
  for (long i = 0; i < rel_; ++i) {
    Integer d;
    mpz_fdiv_qr_ui(u.get_mpz_t(), d.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p_));
    out.push_back(d.get_si());
  }
  return out;
}

Integer Padic::residue(long a) const {
  if (a > abs_prec()) throw PrecisionError("residue requested beyond known precision", abs_prec());
  if (state_ != State::nonzero || a <= 0) return 0;
  if (val_ < 0) throw DomainError("residue of a non-integral p-adic number");
  if (val_ >= a) return 0;
  return mod_positive(unit_ * prime_power(p_, val_), prime_power(p_, a));
}

Rational Padic::to_rational() const {
  if (state_ != State::nonzero) return 0;
  if (val_ >= 0) return Rational(unit_ * prime_power(p_, val_));
  Rational r(unit_, prime_power(p_, -val_));
  r.canonicalize();
  return r;
}

Padic Padic::truncate_abs(long a) const {
  if (a >= abs_prec()) return *this;
  if (state_ != State::nonzero || a <= val_) return zero_to_precision(p_, a);
  long rel = a - val_;
  return Padic(p_, State::nonzero, val_, mod_positive(unit_, prime_power(p_, rel)), rel);
}

Padic Padic::normalize(long p, Integer s, long v_low, long abs_prec) {
  if (abs_prec <= v_low) return Padic(p, State::zero_to_precision, abs_prec, 0, 0);
  s = mod_positive(s, prime_power(p, abs_prec - v_low));
  if (s == 0) return Padic(p, State::zero_to_precision, abs_prec, 0, 0);
  Integer pp = p;
  long k = static_cast<long>(mpz_remove(s.get_mpz_t(), s.get_mpz_t(), pp.get_mpz_t()));
  long v = v_low + k;
  return Padic(p, State::nonzero, v, std::move(s), abs_prec - v);
}

Padic Padic::operator-() const {
  if (state_ != State::nonzero) return *this;
  return Padic(p_, state_, val_, mod_positive(-unit_, prime_power(p_, rel_)), rel_);
}

Padic operator+(const Padic& a, const Padic& b) {
  require_same_prime(a, b);
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const long p = a.p_;
  const long abs = std::min(a.abs_prec(), b.abs_prec());
  const long va = a.valuation();
  const long vb = b.valuation();
  const long v_low = std::min(va, vb);
  if (v_low >= abs) return Padic(p, Padic::State::zero_to_precision, abs, 0, 0);
  Integer s = 0;
  if (a.state_ == Padic::State::nonzero) s += a.unit_ * prime_power(p, va - v_low);
  if (b.state_ == Padic::State::nonzero) s += b.unit_ * prime_power(p, vb - v_low);
  return Padic::normalize(p, std::move(s), v_low, abs);
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  if (a.is_exact_zero() || b.is_exact_zero()) return Padic(p, Padic::State::exact_zero, 0, 0, 0);
  if (a.state_ == Padic::State::zero_to_precision || b.state_ == Padic::State::zero_to_precision) {
    // zero * x is known to vanish to (known zero precision) + v(x)
    long abs = a.valuation() + b.valuation();
    return Padic(p, Padic::State::zero_to_precision, abs, 0, 0);
  }
  const long rel = std::min(a.rel_, b.rel_);
  Integer u = mod_positive(a.unit_ * b.unit_, prime_power(p, rel));
  return Padic(p, Padic::State::nonzero, a.val_ + b.val_, std::move(u), rel);
}

Padic operator/(const Padic& a, const Padic& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  if (b.is_exact_zero()) throw DomainError("division by exact zero");
  if (b.state_ == Padic::State::zero_to_precision)
    throw PrecisionError("division by a value indistinguishable from zero", b.abs_prec());
  if (a.is_exact_zero()) return a;
  if (a.state_ == Padic::State::zero_to_precision)
    return Padic(p, Padic::State::zero_to_precision, a.val_ - b.val_, 0, 0);
  const long rel = std::min(a.rel_, b.rel_);
  const Integer mod = prime_power(p, rel);
  Integer u = mod_positive(a.unit_ * inverse_mod(b.unit_, mod), mod);
  return Padic(p, Padic::State::nonzero, a.val_ - b.val_, std::move(u), rel);
}

Padic Padic::mul_exact(const Integer& n) const {
  if (n == 0) return Padic(p_, State::exact_zero, 0, 0, 0);
  if (state_ == State::exact_zero) return *this;
  const long k = periods::valuation(n, p_);
  if (state_ == State::zero_to_precision) return Padic(p_, state_, val_ + k, 0, 0);
  const Integer mod = prime_power(p_, rel_);
  Integer m = n / prime_power(p_, k);
  return Padic(p_, state_, val_ + k, mod_positive(unit_ * m, mod), rel_);
}

Padic Padic::div_exact(const Integer& n) const {
  if (n == 0) throw DomainError("division by exact zero");
  if (state_ == State::exact_zero) return *this;
  const long k = periods::valuation(n, p_);
  if (state_ == State::zero_to_precision) return Padic(p_, state_, val_ - k, 0, 0);
  const Integer mod = prime_power(p_, rel_);
  Integer m = n / prime_power(p_, k);
  return Padic(p_, state_, val_ - k, mod_positive(unit_ * inverse_mod(m, mod), mod), rel_);
}

Padic Padic::add_exact(const Rational& x) const {
  if (x == 0) return *this;
  if (state_ == State::exact_zero)
    throw DomainError("add_exact: exact zero plus a rational has no finite precision");
  const long vx = periods::valuation(x, p_);
  const long abs = abs_prec();
  if (vx >= abs) return *this;
  return *this + from_rational(p_, x, abs - vx);
}

Padic Padic::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) {
    if (state_ == State::nonzero) return Padic(p_, State::nonzero, 0, 1, rel_);
    if (state_ == State::exact_zero) throw DomainError("0^0");
    throw PrecisionError("0^0 of a value indistinguishable from zero", 0);
  }
  if (state_ == State::exact_zero) return *this;
  if (state_ == State::zero_to_precision) return Padic(p_, state_, val_ * n, 0, 0);
  const Integer mod = prime_power(p_, rel_);
  Integer u;
  mpz_powm_ui(u.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(n), mod.get_mpz_t());
  return Padic(p_, State::nonzero, val_ * n, std::move(u), rel_);
}

Padic Padic::inverse() const {
  if (state_ == State::exact_zero) throw DomainError("inverse of exact zero");
  if (state_ == State::zero_to_precision)
    throw PrecisionError("inverse of a value indistinguishable from zero", val_);
  const Integer mod = prime_power(p_, rel_);
  return Padic(p_, State::nonzero, -val_, inverse_mod(unit_, mod), rel_);
}

Agreement compare(const Padic& a, const Padic& b) {
  Padic d = a - b;
  switch (d.state()) {
    case Padic::State::exact_zero: return Agreement::equal;
    case Padic::State::zero_to_precision: return Agreement::indistinguishable;
    case Padic::State::nonzero: break;
  }
  return Agreement::distinct;
}

std::string Padic::str() const {
  std::ostringstream os;
  if (state_ == State::exact_zero) return "0 (exact)";
  if (state_ == State::zero_to_precision) {
    os << "O(" << p_ << '^' << val_ << ')';
    return os.str();
  }
  os << p_ << '^' << val_ << " * (";
  const auto ds = digits();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) os << " + ";
    os << ds[i];
    if (i == 1) os << '*' << p_;
    if (i >= 2) os << '*' << p_ << '^' << i;
  }
  os << ") + O(" << p_ << '^' << (val_ + rel_) << ')';
  return os.str();
}

long residual_valuation(const Padic& r) {
  return r.valuation();
}

bool agree_to(const Padic& a, const Padic& b, long abs_prec) {
  if (a.abs_prec() < abs_prec || b.abs_prec() < abs_prec) return false;
  return residual_valuation(a - b) >= abs_prec;
}

Padic teichmuller(const Padic& x) {
  if (!x.is_unit()) throw DomainError("teichmuller: argument is not a unit");
  const long p = x.prime();
  const long n = x.rel_prec();
  const Integer mod = prime_power(p, n);
  Integer y = x.unit();
  // y <- y^p converges to the root of unity; each step gains one digit.
  for (long i = 0; i <= n; ++i) {
    Integer next;
    mpz_powm_ui(next.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(p), mod.get_mpz_t());
    if (next == y) break;
    y = std::move(next);
  }
  return Padic::from_unit(p, 0, y, n);
}

long log_series_terms(long p, long s, long target) {
  if (s < 1) throw DomainError("log series: v(t) must be >= 1");
  // n*s - floor(log_p n) is nondecreasing in n for s >= 1.
  long n = 1;
  while (n * s - floor_log(p, n) < target) {
    if (++n > kSeriesTermCap) throw PrecisionError("log series: term cap exceeded", 0);
  }
  return n - 1;
}

long exp_series_terms(long p, long s, long target) {
  // Lower bound n*s - (n-1)/(p-1) on v(x^n/n!) is increasing when
  // s > 1/(p-1).
  long n = 1;
  while (n * s * (p - 1) - (n - 1) < target * (p - 1)) {
    if (++n > kSeriesTermCap) throw PrecisionError("exp series: term cap exceeded", 0);
  }
  return n - 1;
}

Padic log_principal(const Padic& x) {
  const long p = x.prime();
  if (!x.is_unit()) throw DomainError("log_principal: argument is not a unit");
  const Padic t = x.add_exact(-1);
  if (t.is_zero()) return Padic::zero_to_precision(p, t.abs_prec());
  const long s = t.valuation();
  if (s < 1 || (p == 2 && s < 2)) throw DomainError("log_principal: argument is not a principal unit");
  const long target = t.abs_prec();
  const long n_max = log_series_terms(p, s, target);
  Padic sum = Padic::zero_to_precision(p, target);
  Padic power = t;
  for (long n = 1; n <= n_max; ++n) {
    Padic term = power.div_exact(n);
    sum = (n % 2 == 1) ? sum + term : sum - term;
    power = power * t;
  }
  return sum;
}

Padic iwasawa_log(const Padic& x) {
  if (!x.is_unit()) throw DomainError("iwasawa_log: argument is not a unit");
  if (x.prime() == 2) {
    // Torsion in Z_2^x is {+1, -1}.
    const Padic y = (x.unit() % 4 == 1) ? x : -x;
    return log_principal(y);
  }
  return log_principal(x / teichmuller(x));
}

Padic exp_p(const Padic& x) {
  const long p = x.prime();
  if (x.is_exact_zero()) return Padic::from_integer(p, 1, 64);
  const long s = x.valuation();
  if (s < 1 || (p == 2 && s < 2)) throw DomainError("exp_p: argument outside the convergence domain");
  const long target = x.abs_prec();
  if (x.is_zero()) return Padic::from_integer(p, 1, target);
  const long n_max = exp_series_terms(p, s, target);
  Padic sum = Padic::from_integer(p, 1, target);
  Padic term = Padic::from_integer(p, 1, target);
  for (long n = 1; n <= n_max; ++n) {
    term = (term * x).div_exact(n);
    sum += term;
  }
  return sum;
}

Padic hensel_root(const Padic& c, long k, long first_digit) {
  const long p = c.prime();
  if (k < 1 || std::gcd(k, p) != 1) throw DomainError("hensel_root: k must be positive and prime to p");
  if (!c.is_unit()) throw DomainError("hensel_root: argument is not a unit");
  const long n = c.rel_prec();
  Integer r = first_digit;
  Integer check;
  mpz_powm_ui(check.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(k), Integer(p).get_mpz_t());
  if (first_digit % p == 0 || check != c.unit() % p)
    throw DomainError("hensel_root: first digit is not a root modulo p");
  // Newton iteration x <- x - (x^k - c)/(k x^{k-1}); digits double each step.
  Padic x = Padic::from_unit(p, 0, r, n);
  for (long prec = 1; prec < 2 * n + 2; prec *= 2) {
    Padic fx = x.pow(k) - c;
    if (fx.is_zero()) break;
    x = x - fx / x.pow(k - 1).mul_exact(k);
  }
  return x;
}

}  // namespace periods
