#include "periods/tannaka.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace periods {

namespace {

constexpr long kClosureCap = 24;

bool is_gl2_like(GroupKind k) { return k == GroupKind::gl2 || k == GroupKind::sl2 || k == GroupKind::pgl2; }

}  // namespace

GroupDesc GroupDesc::torus(long n) {
  if (n < 0) throw DomainError("torus rank must be >= 0");
  return {GroupKind::torus, n};
}

std::string GroupDesc::name() const {
  switch (kind) {
    case GroupKind::torus: return rank == 1 ? "Gm" : "Gm^" + std::to_string(rank);
    case GroupKind::gl2: return "GL2";
    case GroupKind::sl2: return "SL2";
    case GroupKind::pgl2: return "PGL2";
    case GroupKind::fiber_product: return "G(lambda)";
    case GroupKind::trivial: return "1";
  }
  return "?";
}

long dim_group(const GroupDesc& g) {
  switch (g.kind) {
    case GroupKind::torus: return g.rank;
    case GroupKind::gl2: return 4;
    case GroupKind::sl2: return 3;
    case GroupKind::pgl2: return 3;
    case GroupKind::fiber_product: return 5;  // 2 + 4 - 1
    case GroupKind::trivial: return 0;
  }
  return 0;
}

long subgroup_dim(const GroupDesc& g, SubgroupTag h) {
  switch (h) {
    case SubgroupTag::trivial: return 0;
    case SubgroupTag::whole: return dim_group(g);
    case SubgroupTag::maximal_torus:
      if (g.kind == GroupKind::gl2 || g.kind == GroupKind::fiber_product) return g.kind == GroupKind::gl2 ? 2 : 3;
      if (g.kind == GroupKind::sl2 || g.kind == GroupKind::pgl2) return 1;
      if (g.kind == GroupKind::torus) return g.rank;
      break;
    case SubgroupTag::scalars:
    case SubgroupTag::diag_one_t:
      if (g.kind == GroupKind::gl2) return 1;
      break;
  }
  throw DomainError("no such subgroup of " + g.name());
}

long homog_dim(const GroupDesc& g, SubgroupTag h) { return dim_group(g) - subgroup_dim(g, h); }

ChainReport trdeg_bound_chain(const ChainInput& in) {
  if (in.dr_m < 0 || in.crys_m < 0 || in.dr_mm < 0 || in.crys_mm < 0)
    throw DomainError("trdeg_bound_chain: dimensions must be >= 0");
  ChainReport r;
  r.bound_mm = in.dr_mm - in.crys_mm;
  r.bound_m = in.dr_m - in.crys_m;
  r.dr_m = in.dr_m;
  if (r.bound_mm < 0 || r.bound_m < 0) throw DomainError("trdeg_bound_chain: G_crys larger than G_dR");
  if (r.bound_mm > r.bound_m || r.bound_m > r.dr_m) throw DomainError("trdeg_bound_chain: inputs violate the chain");
  r.first_strict = r.bound_mm < r.bound_m;
  r.second_strict = r.bound_m < r.dr_m;
  return r;
}

std::vector<long> clebsch_gordan(long r1, long r2) {
  if (r1 < 0 || r2 < 0) throw DomainError("clebsch_gordan: negative weight");
  std::vector<long> out;
  for (long i = 0; i <= std::min(r1, r2); ++i) out.push_back(r1 + r2 - 2 * i);
  return out;
}

void RepDesc::validate() const {
  if (!is_gl2_like(group)) throw DomainError("RepDesc: group must be SL2, PGL2 or GL2");
  for (const auto& [r, s] : summands) {
    if (r < 0) throw DomainError("RepDesc: negative symmetric power");
    if (group == GroupKind::sl2 && s != 0) throw DomainError("RepDesc: det twist is trivial on SL2");
    if (group == GroupKind::pgl2 && (r % 2 != 0 || r + 2 * s != 0))
      throw DomainError("RepDesc: PGL2 needs r even and twist s = -r/2");
  }
}

long RepDesc::dim() const {
  long n = 0;
  for (const auto& [r, s] : summands) n += r + 1;
  return n;
}

long invariant_dim(const RepDesc& v, SubgroupTag h) {
  v.validate();
  long total = 0;
  for (const auto& [r, s] : v.summands) {
    // weights of Sym^r x det^s on diag(t1, t2): t1^(r-j+s) t2^(j+s)
    switch (h) {
      case SubgroupTag::trivial: total += r + 1; break;
      case SubgroupTag::whole:
        if (r == 0 && (v.group != GroupKind::gl2 || s == 0)) total += 1;
        break;
      case SubgroupTag::maximal_torus:
        if (v.group == GroupKind::gl2) {
          if (r + 2 * s == 0 && r % 2 == 0) total += 1;
        } else if (r % 2 == 0) {
          total += 1;
        }
        break;
      case SubgroupTag::scalars:
        if (v.group != GroupKind::gl2) throw DomainError("invariant_dim: scalars tag needs GL2");
        if (r + 2 * s == 0) total += r + 1;
        break;
      case SubgroupTag::diag_one_t:
        if (v.group != GroupKind::gl2) throw DomainError("invariant_dim: diag(1, t) tag needs GL2");
        if (-s >= 0 && -s <= r) total += 1;
        break;
    }
  }
  return total;
}

CoeffRingElement CoeffRingElement::constant(const Rational& x) {
  CoeffRingElement e;
  if (x != 0) e.terms_[{0, 0, 0, 0}] = x;
  return e;
}

CoeffRingElement CoeffRingElement::variable(int index, const Rational& coeff) {
  if (index < 0 || index > 3) throw DomainError("CoeffRingElement: variable index out of range");
  Monomial m{0, 0, 0, 0};
  m[index] = 1;
  return monomial(m, coeff);
}

CoeffRingElement CoeffRingElement::monomial(const Monomial& m, const Rational& coeff) {
  for (int e : m)
    if (e < 0) throw DomainError("CoeffRingElement: negative exponent");
  CoeffRingElement x;
  x.add_reduced(m, coeff);
  return x;
}

void CoeffRingElement::add_reduced(const Monomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  const int k = std::min(m[0], m[3]);
  // a^i d^l = a^(i-k) d^(l-k) (1 + bc)^k
  Integer binom = 1;
  for (int t = 0; t <= k; ++t) {
    if (t > 0) binom = binom * (k - t + 1) / t;
    const Monomial r{m[0] - k, m[1] + t, m[2] + t, m[3] - k};
    Rational& slot = terms_[r];
    slot += coeff * binom;
    if (slot == 0) terms_.erase(r);
  }
}

int CoeffRingElement::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2] + m[3]);
  return d;
}

CoeffRingElement operator+(const CoeffRingElement& x, const CoeffRingElement& y) {
  CoeffRingElement z = x;
  for (const auto& [m, c] : y.terms_) z.add_reduced(m, c);
  return z;
}

CoeffRingElement operator-(const CoeffRingElement& x, const CoeffRingElement& y) {
  CoeffRingElement z = x;
  for (const auto& [m, c] : y.terms_) z.add_reduced(m, -c);
  return z;
}

CoeffRingElement operator*(const CoeffRingElement& x, const CoeffRingElement& y) {
  CoeffRingElement z;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) {
      const CoeffRingElement::Monomial m{mx[0] + my[0], mx[1] + my[1], mx[2] + my[2], mx[3] + my[3]};
      z.add_reduced(m, cx * cy);
    }
  return z;
}

std::string CoeffRingElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  const char names[] = {'a', 'b', 'c', 'd'};
  for (const auto& [m, c] : terms_) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    first = false;
    const Rational mag = abs(c);
    const bool unit_monomial = m == Monomial{0, 0, 0, 0};
    if (mag != 1 || unit_monomial) out << mag.get_str() << (unit_monomial ? "" : "*");
    bool first_var = true;
    for (int i = 0; i < 4; ++i) {
      if (m[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << names[i];
      if (m[i] > 1) out << "^" << m[i];
    }
  }
  return out.str();
}

std::vector<CoeffRingElement::Monomial> sl2_normal_monomials(int n) {
  std::vector<CoeffRingElement::Monomial> out;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (int k = 0; i + j + k <= n; ++k) {
        const int l = n - i - j - k;
        if (i > 0 && l > 0) continue;
        out.push_back({i, j, k, l});
      }
  return out;
}

std::vector<CoeffRingElement> torus_matrix_coefficients(long r) {
  if (r < 0 || r % 2 != 0) throw DomainError("torus_matrix_coefficients: r must be even and >= 0");
  const long h = r / 2;
  // (a e1 + c e2)^h (b e1 + d e2)^h; collect by the power of e2.
  std::vector<CoeffRingElement> out(static_cast<std::size_t>(r + 1));
  for (long alpha = 0; alpha <= h; ++alpha)
    for (long beta = 0; beta <= h; ++beta) {
      Integer ca, cb;
      mpz_bin_uiui(ca.get_mpz_t(), h, alpha);
      mpz_bin_uiui(cb.get_mpz_t(), h, beta);
      const long j = (h - alpha) + (h - beta);
      const CoeffRingElement::Monomial m{static_cast<int>(alpha), static_cast<int>(beta), static_cast<int>(h - alpha),
                                         static_cast<int>(h - beta)};
      out[j] = out[j] + CoeffRingElement::monomial(m, Rational(ca * cb));
    }
  return out;
}

long exact_rank(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<Integer>> m;
  for (const auto& row : rows) {
    if (row.size() != cols) throw DomainError("exact_rank: ragged rows");
    Integer l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(x.get_num() * (l / x.get_den()));
    m.push_back(std::move(r));
  }
  // Bareiss: every division below is exact.
  long rank = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < cols && rank < static_cast<long>(m.size()); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        Integer t = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

std::map<long, long> decompose_by_weights(const std::map<long, long>& weight_mult) {
  std::map<long, long> out;
  for (const auto& [w, mult] : weight_mult) {
    if (w < 0) continue;
    auto it = weight_mult.find(w + 2);
    const long next = it == weight_mult.end() ? 0 : it->second;
    if (mult < next) throw Error("decompose_by_weights: weight multiplicities are not those of a representation");
    if (mult > next) out[w] = mult - next;
  }
  return out;
}

std::map<long, long> pgl2_torus_quotient_components(long d) {
  std::map<long, long> weights;
  for (int n = 0; n <= d; n += 2)
    for (const auto& m : sl2_normal_monomials(n))
      if (CoeffRingElement::right_weight(m) == 0) ++weights[CoeffRingElement::left_weight(m)];
  return decompose_by_weights(weights);
}

namespace {

// Left-weight multiplicities of the span of the given elements.
std::map<long, long> span_weights(const std::vector<CoeffRingElement>& elems) {
  std::map<long, std::vector<const CoeffRingElement*>> by_weight;
  for (const auto& e : elems) {
    if (e.is_zero()) continue;
    const long w = CoeffRingElement::left_weight(e.terms().begin()->first);
    for (const auto& [m, c] : e.terms())
      if (CoeffRingElement::left_weight(m) != w) throw Error("closure: element is not left-weight homogeneous");
    by_weight[w].push_back(&e);
  }
  std::map<long, long> out;
  for (const auto& [w, list] : by_weight) {
    std::map<CoeffRingElement::Monomial, std::size_t> index;
    for (const auto* e : list)
      for (const auto& [m, c] : e->terms()) index.emplace(m, 0);
    std::size_t k = 0;
    for (auto& [m, i] : index) i = k++;
    std::vector<std::vector<Rational>> rows;
    for (const auto* e : list) {
      std::vector<Rational> row(index.size(), 0);
      for (const auto& [m, c] : e->terms()) row[index[m]] = c;
      rows.push_back(std::move(row));
    }
    out[w] = exact_rank(rows);
  }
  return out;
}

std::map<long, long> subtract(const std::map<long, long>& target, const std::map<long, long>& reached) {
  std::map<long, long> out;
  for (const auto& [n, mult] : target) {
    auto it = reached.find(n);
    const long got = it == reached.end() ? 0 : it->second;
    if (mult > got) out[n] = mult - got;
  }
  return out;
}

}  // namespace

ClosureReport coeff_subalgebra_closure(long r, long cap) {
  if (r < 0 || r % 2 != 0) throw DomainError("closure: r must be even and >= 0 (a PGL2 representation)");
  if (cap < 0) throw DomainError("closure: degree cap must be >= 0");
  if (cap > kClosureCap) throw DomainError("closure: degree cap exceeds " + std::to_string(kClosureCap));
  const auto gens = torus_matrix_coefficients(r);

  ClosureReport report;
  report.r = r;
  report.cap = cap;
  // products of exactly k generators, as multisets
  std::vector<CoeffRingElement> all{CoeffRingElement::constant(1)};
  std::vector<std::pair<CoeffRingElement, std::size_t>> layer{{CoeffRingElement::constant(1), 0}};
  long products = 0;
  report.generated = true;
  for (long d = 0; d <= cap; d += 2) {
    const long want = r == 0 ? 0 : d / r;
    while (products < want) {
      std::vector<std::pair<CoeffRingElement, std::size_t>> next;
      for (const auto& [e, first] : layer)
        for (std::size_t g = first; g < gens.size(); ++g) {
          next.emplace_back(e * gens[g], g);
          all.push_back(next.back().first);
        }
      layer = std::move(next);
      ++products;
    }
    ClosureDegree row;
    row.degree = d;
    row.reached = decompose_by_weights(span_weights(all));
    row.target = pgl2_torus_quotient_components(d);
    row.missing = subtract(row.target, row.reached);
    row.generated = row.missing.empty();
    report.generated = report.generated && row.generated;
    report.missing = row.missing;
    report.degrees.push_back(std::move(row));
  }
  return report;
}

}  // namespace periods
