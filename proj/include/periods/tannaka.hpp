#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "periods/padic.hpp"

namespace periods {

enum class GroupKind { torus, gl2, sl2, pgl2, fiber_product, trivial };

/// Closed subgroups that homog_dim knows how to embed.
enum class SubgroupTag {
  trivial,
  whole,
  maximal_torus,
  scalars,     // t -> diag(t, t) in GL2
  diag_one_t,  // t -> diag(1, t) in GL2
};

struct GroupDesc {
  GroupKind kind = GroupKind::trivial;
  long rank = 0;  // torus rank

  static GroupDesc torus(long n);
  static GroupDesc gl2() { return {GroupKind::gl2, 0}; }
  static GroupDesc sl2() { return {GroupKind::sl2, 0}; }
  static GroupDesc pgl2() { return {GroupKind::pgl2, 0}; }
  /// {(a, b, A) : ab = det A} inside Gm x Gm x GL2.
  static GroupDesc fiber_product() { return {GroupKind::fiber_product, 0}; }
  static GroupDesc trivial() { return {GroupKind::trivial, 0}; }

  std::string name() const;
};

long dim_group(const GroupDesc& g);
/// Dimension of the tagged subgroup of g; throws DomainError if g has no
/// such subgroup.
long subgroup_dim(const GroupDesc& g, SubgroupTag h);
/// dim G - dim H.
long homog_dim(const GroupDesc& g, SubgroupTag h);

struct ChainInput {
  long dr_m = 0;      // dim G_dR(M)
  long crys_m = 0;    // dim G_crys(M)
  long dr_mm = 0;     // dim G_dR(M x M^v)
  long crys_mm = 0;   // dim G_crys(M x M^v)
};

/// bound_mm <= bound_m <= dr_m with strictness flags.
struct ChainReport {
  long bound_mm = 0;
  long bound_m = 0;
  long dr_m = 0;
  bool first_strict = false;
  bool second_strict = false;
};

ChainReport trdeg_bound_chain(const ChainInput& in);

/// Sym^r1 x Sym^r2 = sum over i <= min(r1, r2) of Sym^(r1 + r2 - 2i).
std::vector<long> clebsch_gordan(long r1, long r2);

/// Sym^r(std) x det^s summands of a representation of SL2, PGL2 or GL2.
struct RepDesc {
  GroupKind group = GroupKind::sl2;
  std::vector<std::pair<long, long>> summands;  // (r, s)

  static RepDesc sym(GroupKind g, long r, long s = 0) { return {g, {{r, s}}}; }
  void validate() const;
  long dim() const;
};

long invariant_dim(const RepDesc& v, SubgroupTag h);

/// Element of Q[a, b, c, d] / (ad - bc - 1) in the normal form that has no
/// monomial divisible by ad. Left weights: a, b = +1, c, d = -1. Right
/// weights: a, c = +1, b, d = -1.
class CoeffRingElement {
 public:
  using Monomial = std::array<int, 4>;  // exponents of a, b, c, d

  CoeffRingElement() = default;
  static CoeffRingElement constant(const Rational& x);
  static CoeffRingElement variable(int index, const Rational& coeff = 1);
  static CoeffRingElement monomial(const Monomial& m, const Rational& coeff = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  static int left_weight(const Monomial& m) { return m[0] + m[1] - m[2] - m[3]; }
  static int right_weight(const Monomial& m) { return m[0] - m[1] + m[2] - m[3]; }

  friend CoeffRingElement operator+(const CoeffRingElement& x, const CoeffRingElement& y);
  friend CoeffRingElement operator-(const CoeffRingElement& x, const CoeffRingElement& y);
  friend CoeffRingElement operator*(const CoeffRingElement& x, const CoeffRingElement& y);
  friend bool operator==(const CoeffRingElement& x, const CoeffRingElement& y) { return x.terms_ == y.terms_; }

  std::string str() const;

 private:
  void add_reduced(const Monomial& m, const Rational& coeff);
  std::map<Monomial, Rational> terms_;
};

/// Normal-form monomials of total degree exactly n.
std::vector<CoeffRingElement::Monomial> sl2_normal_monomials(int n);

/// Matrix coefficients g -> coefficient of e1^(r-j) e2^j in g (e1 e2)^(r/2),
/// j = 0..r: the image of V^T x V^v for V = Sym^r, T the diagonal torus.
std::vector<CoeffRingElement> torus_matrix_coefficients(long r);

/// Rank of a family of vectors with rational entries by fraction-free
/// elimination.
long exact_rank(const std::vector<std::vector<Rational>>& rows);

/// Multiplicities of left irreducibles V_n, n even, of a left-stable space
/// given by left-weight multiplicities m(w): mult(n) = m(n) - m(n + 2).
std::map<long, long> decompose_by_weights(const std::map<long, long>& weight_mult);

struct ClosureDegree {
  long degree = 0;
  std::map<long, long> reached;  // n -> multiplicity of V_n
  std::map<long, long> target;   // same for O(PGL2/T) in filtration degree <= degree
  std::map<long, long> missing;
  bool generated = false;
};

struct ClosureReport {
  long r = 0;
  long cap = 0;
  std::vector<ClosureDegree> degrees;  // even degrees 0, 2, ..., cap
  bool generated = false;              // through cap
  std::map<long, long> missing;        // at the cap
};

/// Span of products of at most floor(d / r) matrix coefficients of Sym^r,
/// compared degree by degree with O(PGL2/T).
ClosureReport coeff_subalgebra_closure(long r, long cap);

/// O(PGL2/T) in filtration degree <= d by monomial counting.
std::map<long, long> pgl2_torus_quotient_components(long d);

}  // namespace periods
