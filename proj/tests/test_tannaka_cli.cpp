#include <doctest.h>

#include <cstdlib>

#include "periods/cli.hpp"
#include "periods/tannaka.hpp"

using namespace periods;

TEST_CASE("group dimensions") {
  CHECK(dim_group(GroupDesc::gl2()) == 4);
  CHECK(dim_group(GroupDesc::sl2()) == 3);
  CHECK(dim_group(GroupDesc::pgl2()) == 3);
  CHECK(dim_group(GroupDesc::torus(3)) == 3);
  CHECK(dim_group(GroupDesc::fiber_product()) == 5);
  CHECK(dim_group(GroupDesc::trivial()) == 0);
  CHECK(homog_dim(GroupDesc::pgl2(), SubgroupTag::maximal_torus) == 2);
  CHECK(homog_dim(GroupDesc::gl2(), SubgroupTag::diag_one_t) == 3);
  CHECK(homog_dim(GroupDesc::gl2(), SubgroupTag::scalars) == 3);
  CHECK(homog_dim(GroupDesc::torus(1), SubgroupTag::whole) == 0);
  CHECK_THROWS_AS(subgroup_dim(GroupDesc::trivial(), SubgroupTag::maximal_torus), DomainError);
}

TEST_CASE("inequality chain") {
  const ChainReport r = trdeg_bound_chain({3, 0, 3, 0});
  CHECK(r.bound_m == 3);
  CHECK(r.bound_mm == 3);
  CHECK_FALSE(r.first_strict);
  CHECK_THROWS_AS(trdeg_bound_chain({3, 4, 3, 0}), DomainError);
  CHECK_THROWS_AS(trdeg_bound_chain({-1, 0, 0, 0}), DomainError);
}

TEST_CASE("clebsch-gordan dimensions") {
  for (long a = 0; a <= 8; ++a)
    for (long b = 0; b <= 8; ++b) {
      long total = 0;
      for (long r : clebsch_gordan(a, b)) total += r + 1;
      CHECK(total == (a + 1) * (b + 1));
    }
  CHECK(clebsch_gordan(2, 2) == std::vector<long>{4, 2, 0});
}

TEST_CASE("invariants") {
  for (long r = 0; r <= 8; ++r) {
    CHECK(invariant_dim(RepDesc::sym(GroupKind::sl2, r), SubgroupTag::whole) == (r == 0 ? 1 : 0));
    CHECK(invariant_dim(RepDesc::sym(GroupKind::sl2, r), SubgroupTag::maximal_torus) == (r % 2 == 0 ? 1 : 0));
    CHECK(invariant_dim(RepDesc::sym(GroupKind::sl2, r), SubgroupTag::trivial) == r + 1);
  }
  CHECK_THROWS_AS(RepDesc::sym(GroupKind::pgl2, 3).validate(), DomainError);
}

TEST_CASE("coordinate ring normal form") {
  using E = CoeffRingElement;
  const E a = E::variable(0), b = E::variable(1), c = E::variable(2), d = E::variable(3);
  CHECK(a * d - b * c == E::constant(1));
  CHECK((a * d) * (a * d) == (E::constant(1) + b * c) * (E::constant(1) + b * c));
  for (int n = 0; n <= 6; ++n) CHECK(static_cast<long>(sl2_normal_monomials(n).size()) == (n + 1) * (n + 1));
}

TEST_CASE("torus matrix coefficients have right weight zero") {
  for (long r : {2L, 4L}) {
    const auto gens = torus_matrix_coefficients(r);
    CHECK(static_cast<long>(gens.size()) == r + 1);
    for (const auto& g : gens)
      for (const auto& [m, coeff] : g.terms()) CHECK(CoeffRingElement::right_weight(m) == 0);
  }
}

TEST_CASE("exact rank") {
  CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank({{1, 2, 3}, {0, 1, 1}, {1, 3, 4}}) == 2);
  CHECK(exact_rank({{Rational(1, 2), 0}, {0, Rational(1, 3)}}) == 2);
  CHECK(exact_rank({}) == 0);
}

TEST_CASE("closure") {
  const auto adj = coeff_subalgebra_closure(2, 8);
  CHECK(adj.generated);
  CHECK(adj.missing.empty());
  const auto s4 = coeff_subalgebra_closure(4, 8);
  CHECK_FALSE(s4.generated);
  CHECK(s4.missing == std::map<long, long>{{2, 1}, {6, 1}});
  // reached components only grow with the degree
  for (std::size_t i = 1; i < s4.degrees.size(); ++i)
    for (const auto& [n, m] : s4.degrees[i - 1].reached) CHECK(s4.degrees[i].reached.at(n) >= m);
  const auto triv = coeff_subalgebra_closure(0, 4);
  CHECK_FALSE(triv.generated);
  CHECK_THROWS_AS(coeff_subalgebra_closure(3, 8), DomainError);
}

TEST_CASE("quotient components") {
  for (long d = 0; d <= 8; d += 2) {
    std::map<long, long> expected;
    for (long n = 0; n <= d; n += 2) expected[n] = 1;
    CHECK(pgl2_torus_quotient_components(d) == expected);
  }
}

TEST_CASE("cli is deterministic") {
  RunConfig c;
  c.command = "reproduce-paper";
  c.precision = 6;
  c.seed = 42;
  const RunResult a = execute(c);
  const RunResult b = execute(c);
  CHECK(a.exit_code == 0);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.text == b.text);
}

TEST_CASE("cli exit codes") {
  RunConfig c;
  c.command = "gamma";
  c.p = 6;
  c.precision = 4;
  c.x = "1";
  CHECK(execute(c).exit_code == 2);
  c.p = 5;
  CHECK(execute(c).exit_code == 0);
  c.x = "1/5";
  CHECK(execute(c).exit_code == 2);

  RunConfig h;
  h.command = "hyper";
  h.p = 3;
  h.precision = 30;
  h.lambda0 = "2";
  h.order = 40;
  h.at = "5";
  const RunResult r = execute(h);
  CHECK(r.exit_code == 1);
  CHECK(r.report["error"]["kind"] == "precision");

  RunConfig u;
  u.command = "nope";
  CHECK(execute(u).exit_code == 2);
}

TEST_CASE("precision cap") {
  setenv("PERIODS_PRECISION_CAP", "50", 1);
  RunConfig c;
  c.command = "gamma";
  c.p = 5;
  c.precision = 51;
  c.x = "1";
  CHECK(execute(c).exit_code == 2);
  c.precision = 50;
  CHECK(execute(c).exit_code == 0);
  unsetenv("PERIODS_PRECISION_CAP");
  CHECK(precision_cap() == 4096);
}

TEST_CASE("padic json encodes the zero states") {
  const Json z = padic_json(Padic::exact_zero(3));
  CHECK(z["zero"] == "exact");
  const Padic one = Padic::from_integer(3, 1, 5);
  const Json d = padic_json(one - one);
  CHECK(d["zero"] == "to_precision");
  CHECK(d["absolute_precision"] == 5);
  const Json m = padic_json(Padic::from_integer(3, -1, 4));
  CHECK(m["balanced"] == "-1");
  CHECK(m["digits"] == Json::array({2, 2, 2, 2}));
}
