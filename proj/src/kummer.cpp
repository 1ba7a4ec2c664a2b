#include "periods/kummer.hpp"

#include <algorithm>
#include <set>

namespace periods {

void KummerData::validate() const {
  if (!is_prime(p) || p == 2) throw DomainError("Kummer: p must be an odd prime");
  if (precision < 1) throw DomainError("Kummer: precision must be >= 1");
  if (a == 0 || a == 1 || a == -1) throw DomainError("Kummer: a must differ from 0 and +-1");
  if (a.get_num() % p == 0 || a.get_den() % p == 0) throw DomainError("Kummer: a must be a p-adic unit");
}

Padic KummerData::a_padic() const { return Padic::from_rational(p, a, precision); }

PeriodMatrix frobenius_matrix_kummer(const KummerData& data) {
  data.validate();
  const long p = data.p;
  const Padic log_term = log_principal(data.a_padic().pow(1 - p));
  PeriodMatrix phi(p, 2, 2);
  phi(0, 0) = Padic::from_integer(p, 1, data.precision);
  phi(0, 1) = log_term;
  phi(1, 0) = Padic::exact_zero(p);
  phi(1, 1) = Padic::from_integer(p, p, data.precision);
  phi.row_labels = {"1", "1(1)"};
  phi.col_labels = {"1", "1(1)"};
  return phi;
}

std::vector<Padic> period_vector_kummer(const KummerData& data) {
  const PeriodMatrix phi = frobenius_matrix_kummer(data);
  return {phi(0, 1).div_exact(1 - data.p), Padic::from_integer(data.p, 1, data.precision)};
}

long frobenius_invariance_residual(const PeriodMatrix& phi, const std::vector<Padic>& row) {
  if (phi.rows() != row.size() || phi.cols() != row.size()) throw DomainError("invariance: shape mismatch");
  PeriodMatrix f(phi.prime(), 1, row.size());
  for (std::size_t j = 0; j < row.size(); ++j) f(0, j) = row[j];
  return (f * phi - f).min_valuation();
}

Residual check_frobenius_invariance(const KummerData& data) {
  const PeriodMatrix phi = frobenius_matrix_kummer(data);
  const std::vector<Padic> row{Padic::from_integer(data.p, 1, data.precision), phi(0, 1).div_exact(1 - data.p)};
  return Residual{frobenius_invariance_residual(phi, row), data.precision};
}

void WeightBlockMatrix::validate() const {
  const std::size_t n = phi.rows();
  if (phi.cols() != n || weights.size() != n) throw DomainError("WeightBlockMatrix: shape mismatch");
  if (std::none_of(weights.begin(), weights.end(), [](int w) { return w == 0; }))
    throw DomainError("WeightBlockMatrix: no weight-0 block");
  if (std::any_of(weights.begin(), weights.end(), [](int w) { return w > 0; }))
    throw DomainError("WeightBlockMatrix: positive weights are not supported");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (weights[i] > weights[j] && !phi(i, j).is_zero())
        throw DomainError("WeightBlockMatrix: entry below the weight filtration is nonzero");
}

namespace {

std::vector<std::size_t> indices_of_weight(const std::vector<int>& weights, int w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] == w) out.push_back(i);
  return out;
}

void check_weight_zero_fixed(const WeightBlockMatrix& m, const std::vector<std::size_t>& zero,
                             const std::vector<Padic>& v0) {
  if (v0.size() != zero.size()) throw DomainError("mixed period: v0 does not match the weight-0 block");
  for (std::size_t a = 0; a < zero.size(); ++a) {
    Padic acc = -v0[a];
    for (std::size_t b = 0; b < zero.size(); ++b) acc += m.phi(zero[a], zero[b]) * v0[b];
    if (!acc.is_zero()) throw DomainError("mixed period: v0 is not fixed by the weight-0 block");
  }
}

}  // namespace

std::vector<Padic> solve_mixed_period(const WeightBlockMatrix& m, const std::vector<Padic>& v0) {
  m.validate();
  const long p = m.phi.prime();
  const std::size_t n = m.phi.rows();
  const auto zero = indices_of_weight(m.weights, 0);
  check_weight_zero_fixed(m, zero, v0);

  std::vector<Padic> v(n, Padic::exact_zero(p));
  std::vector<bool> known(n, false);
  for (std::size_t a = 0; a < zero.size(); ++a) {
    v[zero[a]] = v0[a];
    known[zero[a]] = true;
  }
  std::set<int, std::greater<>> lower(m.weights.begin(), m.weights.end());
  lower.erase(0);
  for (int w : lower) {
    const auto idx = indices_of_weight(m.weights, w);
    const std::size_t k = idx.size();
    PeriodMatrix block(p, k, k);
    std::vector<Padic> rhs;
    for (std::size_t a = 0; a < k; ++a) {
      Padic acc = Padic::exact_zero(p);
      for (std::size_t j = 0; j < n; ++j)
        if (known[j]) acc += m.phi(idx[a], j) * v[j];
      rhs.push_back(acc);
      for (std::size_t b = 0; b < k; ++b) {
        Padic entry = -m.phi(idx[a], idx[b]);
        if (a == b) entry = entry.add_exact(1);
        block(a, b) = entry;
      }
    }
    const auto sol = solve_linear(block, rhs);
    for (std::size_t a = 0; a < k; ++a) {
      v[idx[a]] = sol[a];
      known[idx[a]] = true;
    }
  }
  return v;
}

std::vector<Padic> solve_mixed_period_dense(const WeightBlockMatrix& m, const std::vector<Padic>& v0) {
  m.validate();
  const long p = m.phi.prime();
  const std::size_t n = m.phi.rows();
  const auto zero = indices_of_weight(m.weights, 0);
  check_weight_zero_fixed(m, zero, v0);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (m.weights[i] != 0) rest.push_back(i);

  std::vector<Padic> v(n, Padic::exact_zero(p));
  for (std::size_t a = 0; a < zero.size(); ++a) v[zero[a]] = v0[a];
  if (rest.empty()) return v;

  PeriodMatrix lhs(p, rest.size(), rest.size());
  std::vector<Padic> rhs;
  for (std::size_t a = 0; a < rest.size(); ++a) {
    for (std::size_t b = 0; b < rest.size(); ++b) {
      Padic entry = -m.phi(rest[a], rest[b]);
      if (a == b) entry = entry.add_exact(1);
      lhs(a, b) = entry;
    }
    Padic acc = Padic::exact_zero(p);
    for (std::size_t b = 0; b < zero.size(); ++b) acc += m.phi(rest[a], zero[b]) * v0[b];
    rhs.push_back(acc);
  }
  const auto sol = solve_linear(lhs, rhs);
  for (std::size_t a = 0; a < rest.size(); ++a) v[rest[a]] = sol[a];
  return v;
}

WeightBlockMatrix kummer_weight_matrix(const KummerData& data) {
  const PeriodMatrix phi = frobenius_matrix_kummer(data);
  // Reverse the basis and transpose: the row f with f phi = f becomes the
  // column V with phi' V = V.
  PeriodMatrix col(data.p, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) col(i, j) = phi(1 - j, 1 - i);
  col.row_labels = {"1(1)", "1"};
  col.col_labels = {"1(1)", "1"};
  return WeightBlockMatrix{col, {-2, 0}};
}

}  // namespace periods
