#include <iostream>

#include <CLI11.hpp>

#include "periods/cli.hpp"

int main(int argc, char** argv) {
  periods::RunConfig cfg;
  CLI::App app{"p-adic periods: Gamma_p, Gauss sums, CM periods, Frobenius structures"};
  app.require_subcommand(1);
  app.add_flag("--json", cfg.json, "print the JSON report");

  auto common = [&](CLI::App* sub, bool need_p, bool need_prec) {
    auto* po = sub->add_option("--p", cfg.p, "prime");
    auto* no = sub->add_option("--prec,-N", cfg.precision, "p-adic precision");
    if (need_p) po->required();
    if (need_prec) no->required();
    sub->add_flag("--json", cfg.json, "print the JSON report");
  };

  auto* gamma = app.add_subcommand("gamma", "Morita p-adic Gamma function");
  common(gamma, true, true);
  gamma->add_option("--x", cfg.x, "rational p-adic integer")->required();

  auto* gk = app.add_subcommand("gk", "Gross-Koblitz check");
  common(gk, true, true);
  gk->add_option("--a", cfg.a, "exponent in [1, p-2]")->required();

  auto* cm = app.add_subcommand("cm", "periods of CM elliptic curves");
  common(cm, false, true);
  cm->add_option("--d", cfg.d, "squarefree d for Q(sqrt(-d))");
  cm->add_option("--ramified-n", cfg.ramified_n, "ramified case at p = 3 for Q(sqrt(-3n))");
  cm->add_option("--probe", cfg.probe_height, "algebraicity probe height");

  auto* kummer = app.add_subcommand("kummer", "Kummer motive Frobenius and periods");
  common(kummer, true, true);
  kummer->add_option("--a", cfg.a_rational, "rational a, a p-adic unit, not a root of unity")->required();

  auto* mixed = app.add_subcommand("mixed", "Frobenius-invariant vector of a mixed structure");
  mixed->add_option("--matrix", cfg.matrix_path, "JSON file {p, precision, weights, rows}")->required();
  mixed->add_option("--v0", cfg.v0_path, "JSON file with the initial vector")->required();
  mixed->add_flag("--json", cfg.json, "print the JSON report");

  auto* hyper = app.add_subcommand("hyper", "hypergeometric Picard-Fuchs solutions");
  common(hyper, true, true);
  hyper->add_option("--lambda0", cfg.lambda0, "base point")->required();
  hyper->add_option("--e", cfg.e, "initial derivative of beta");
  hyper->add_option("--order", cfg.order, "series order T")->required();
  hyper->add_option("--at", cfg.at, "evaluation point");

  auto* frob = app.add_subcommand("frob", "Frobenius on H^1_dR of y^2 = f(x) by Kedlaya");
  common(frob, true, true);
  frob->add_option("--f", cfg.f, "monic cubic, e.g. x^3+x+1")->required();
  frob->add_flag("--selftest", cfg.selftest, "recompute at higher precision and compare");

  auto* bound = app.add_subcommand("bound", "transcendence degree bounds");
  bound->add_option("--case", cfg.case_name, "cm-ss, noncm-ss, noncm-ord, legendre")->required();
  bound->add_flag("--json", cfg.json, "print the JSON report");

  auto* closure = app.add_subcommand("closure", "matrix-coefficient subalgebra of O(PGL2/T)");
  closure->add_option("--r", cfg.r, "even r for Sym^r")->required();
  closure->add_option("--cap", cfg.cap, "filtration degree cap")->required();
  closure->add_flag("--json", cfg.json, "print the JSON report");

  auto* repro = app.add_subcommand("reproduce-paper", "recompute the claim table");
  common(repro, false, false);
  repro->add_option("--seed", cfg.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const periods::RunResult r = periods::execute(cfg);
  if (cfg.json)
    std::cout << r.report.dump(2) << "\n";
  else if (r.exit_code == 0)
    std::cout << r.text;
  else
    std::cerr << r.text;
  return r.exit_code;
}
