#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "rhomix/csv.hpp"
#include "rhomix/ensembles.hpp"
#include "rhomix/format.hpp"
#include "rhomix/json_io.hpp"

using namespace rhomix;

namespace {

ComplexMatrix diag(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("seventeen-digit float formatting") {
  CHECK(fmt17(0.25) == "0.25");
  CHECK(fmt17(1.0 / 3) == "0.33333333333333331");
  CHECK(fmt17(1.0) == "1");
  CHECK(fmt17(-0.5) == "-0.5");
  CHECK(fmt17(1e-300) == "1e-300");
}

TEST_CASE("density matrix json round trip") {
  ComplexMatrix m(2, 2,
                  {Complex(0.75, 0), Complex(0.1, -0.2), Complex(0.1, 0.2),
                   Complex(0.25, 0)});
  const DensityMatrix rho(m);
  const std::string text = density_to_json(rho);
  const DensityMatrix back = parse_density_json(text);
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
  // emitted text is stable
  CHECK(density_to_json(back) == text);
}

TEST_CASE("density matrix json parsing errors") {
  CHECK_THROWS_AS(parse_density_json("not json at all"), ValidationError);
  CHECK_THROWS_AS(parse_density_json("{\"dim\": 2}"), ValidationError);
  CHECK_THROWS_AS(
      parse_density_json(
          "{\"dim\": 2, \"matrix\": [[[1,0],[0,0]],[[0,0],[0,0]]], "
          "\"extra\": 1}"),
      ValidationError);
  // dim disagrees with the matrix
  CHECK_THROWS_AS(
      parse_density_json("{\"dim\": 3, \"matrix\": [[[1,0],[0,0]],"
                         "[[0,0],[0,0]]]}"),
      ValidationError);
  // ragged rows
  CHECK_THROWS_AS(
      parse_density_json("{\"dim\": 2, \"matrix\": [[[1,0],[0,0]],"
                         "[[0,0]]]}"),
      ValidationError);
  // complex entries must be two-element arrays
  CHECK_THROWS_AS(
      parse_density_json("{\"dim\": 1, \"matrix\": [[[1,0,0]]]}"),
      ValidationError);
  // the parsed object still must be a density matrix
  CHECK_THROWS_AS(
      parse_density_json("{\"dim\": 2, \"matrix\": [[[0.9,0],[0,0]],"
                         "[[0,0],[0.3,0]]]}"),
      ValidationError);
}

TEST_CASE("ensemble json round trip") {
  const double r = std::sqrt(0.5);
  const PureEnsemble e(
      ProbabilityVector({0.5, 0.5}),
      {{Complex(r, 0), Complex(r, 0)}, {Complex(r, 0), Complex(-r, 0)}});
  const std::string text = ensemble_to_json(e);
  const PureEnsemble back = parse_ensemble_json(text);
  REQUIRE(back.size() == 2);
  CHECK(back.weights[0] == e.weights[0]);
  CHECK(back.states[1][1] == e.states[1][1]);
  CHECK(ensemble_to_json(back) == text);
  CHECK_THROWS_AS(parse_ensemble_json("{\"weights\": [1.0]}"),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_ensemble_json("{\"weights\": [1.0], \"states\": "
                          "[[[1,0],[0,0]]], \"label\": \"x\"}"),
      ValidationError);
}

TEST_CASE("vector and bistochastic json") {
  const std::vector<double> v = parse_vector_json("[0.5, 0.3, 0.2]");
  CHECK(v == std::vector<double>{0.5, 0.3, 0.2});
  CHECK_THROWS_AS(parse_vector_json("{\"v\": []}"), ValidationError);
  CHECK_THROWS_AS(parse_vector_json("[0.5, \"x\"]"), ValidationError);

  const BistochasticMatrix b =
      parse_bistochastic_json("[[0.25, 0.75], [0.75, 0.25]]");
  CHECK(b(0, 1) == 0.75);
  CHECK_THROWS_AS(parse_bistochastic_json("[[1, 0], [1, 0]]"),
                  ValidationError);
  CHECK_THROWS_AS(parse_bistochastic_json("[[1, 0], [0]]"), ValidationError);
}

TEST_CASE("construction outcome json round trip") {
  const ConstructionOutcome out = uniform_ensemble(
      DensityMatrix(diag({0.75, 0.25})), 3);
  const std::string text = outcome_to_json(out);
  const ConstructionOutcome back = parse_outcome_json(text);
  CHECK(back.degenerate == out.degenerate);
  CHECK(back.residual == out.residual);
  CHECK(max_abs_diff(back.unitary_used, out.unitary_used) == 0.0);
  CHECK(back.bistochastic_used.entries() == out.bistochastic_used.entries());
  CHECK(back.ensemble.weights[2] == out.ensemble.weights[2]);
  CHECK(outcome_to_json(back) == text);

  // unitarity of the stored matrix is re-checked on parse
  std::string corrupt = text;
  const std::string needle = "\"unitary\":";
  const auto at = corrupt.find(needle);
  REQUIRE(at != std::string::npos);
  // scale the first entry of the unitary
  const auto open = corrupt.find("[[[", at);
  REQUIRE(open != std::string::npos);
  corrupt.replace(open, 3, "[[[9.0,");
  CHECK_THROWS_AS(parse_outcome_json(corrupt), ValidationError);
}

TEST_CASE("explore config json") {
  const std::string text =
      "{\"trials\": 5, \"m_min\": 2, \"m_max\": 3, \"n_min\": 3, "
      "\"n_max\": 4, \"algorithms\": [\"uniform\", \"ratio-sweep\"], "
      "\"master_seed\": 42, \"tolerances\": {\"degeneracy\": 1e-7}}";
  const ExploreConfig cfg = parse_config_json(text);
  CHECK(cfg.trials == 5);
  CHECK(cfg.m_max == 3);
  CHECK(cfg.n_max == 4);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.algorithms == std::vector<std::string>{"uniform", "ratio-sweep"});
  CHECK(cfg.tolerances.degeneracy == 1e-7);
  CHECK(cfg.tolerances.certification == 1e-8);  // untouched default

  CHECK_THROWS_AS(parse_config_json("{\"trials\": 5}"), ValidationError);
  CHECK_THROWS_AS(
      parse_config_json(
          "{\"trials\": 1, \"m_min\": 2, \"m_max\": 2, \"n_min\": 2, "
          "\"n_max\": 2, \"algorithms\": [\"uniform\"], \"bogus\": 0}"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_config_json(
          "{\"trials\": 1, \"m_min\": 2, \"m_max\": 2, \"n_min\": 2, "
          "\"n_max\": 2, \"algorithms\": [\"uniform\"], "
          "\"tolerances\": {\"slack\": 1}}"),
      ValidationError);
}

TEST_CASE("frozen chain-links report") {
  const double h = 0.5;
  const BistochasticMatrix b(3, {h, h, 0, 0, h, h, h, 0, h});
  const std::string text = chain_links_to_json(chain_links(b));
  CHECK(text ==
        "{\"satisfied\":false,\"worst_margin\":-0.5,"
        "\"violating_pair\":{\"axis\":\"column\",\"a\":0,\"b\":1},"
        "\"violating_links\":[0.5,0,0]}");

  const std::string ok = chain_links_to_json(chain_links(van_der_waerden(2)));
  CHECK(ok ==
        "{\"satisfied\":true,\"worst_margin\":0,"
        "\"violating_pair\":null,\"violating_links\":null}");
}

TEST_CASE("certification report json") {
  const auto cert = certify_unistochastic(van_der_waerden(3));
  const std::string text =
      unistochastic_report_to_json(cert, chain_links(van_der_waerden(3)));
  CHECK(text.find("\"verdict\":\"certified\"") != std::string::npos);
  CHECK(text.find("\"witness\":[[[") != std::string::npos);
  CHECK(text.find("\"chain_links\":{") != std::string::npos);

  const double h = 0.5;
  const BistochasticMatrix bad(3, {h, h, 0, 0, h, h, h, 0, h});
  const auto refuted = certify_unistochastic(bad);
  const std::string rt =
      unistochastic_report_to_json(refuted, chain_links(bad));
  CHECK(rt.find("\"verdict\":\"refuted\"") != std::string::npos);
  CHECK(rt.find("\"witness\":null") != std::string::npos);
}

TEST_CASE("majorize and admissible report json") {
  CHECK(majorize_report_to_json(true, {0.0, 0.25, 0.0}) ==
        "{\"majorizes\":true,\"margins\":[0,0.25,0]}");
  CHECK(admissible_report_to_json(Admissibility::BoundaryDegenerateGap,
                                  {0.0, 0.25, 0.0}) ==
        "{\"verdict\":\"boundary_degenerate_gap\","
        "\"prefix_margins\":[0,0.25,0]}");
  CHECK(admissible_report_to_json(Admissibility::ExcludedPure, {0.0}) ==
        "{\"verdict\":\"excluded_pure\",\"prefix_margins\":[0]}");
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
  CHECK(csv_escape("") == "");
}

TEST_CASE("trial records to csv and json") {
  TrialRecord good;
  good.seed = 7;
  good.m = 2;
  good.n = 3;
  good.lambda = {0.75, 0.25};
  good.p = {0.5, 0.25, 0.25};
  good.admissibility = Admissibility::Admissible;
  good.algorithm = "uniform";
  good.outcome = TrialOutcome::Degenerate;
  good.residual = 0.25;
  good.min_pair_gap = 0.0;

  TrialRecord failed = good;
  failed.algorithm = "ratio-sweep";
  failed.outcome = TrialOutcome::Nonconvergent;
  failed.residual.reset();
  failed.min_pair_gap.reset();

  std::ostringstream os;
  write_trials_csv(os, {good, failed});
  const std::string expect =
      "seed,M,N,lambda,p,admissibility,algorithm,outcome,residual,"
      "min_pair_gap\n"
      "7,2,3,\"0.75,0.25\",\"0.5,0.25,0.25\",admissible,uniform,degenerate,"
      "0.25,0\n"
      "7,2,3,\"0.75,0.25\",\"0.5,0.25,0.25\",admissible,ratio-sweep,"
      "nonconvergent,,\n";
  CHECK(os.str() == expect);
  CHECK(os.str().find('\r') == std::string::npos);

  const std::string rj = records_to_json({good, failed});
  CHECK(rj.find("\"outcome\":\"nonconvergent\"") != std::string::npos);
  CHECK(rj.find("\"residual\":null") != std::string::npos);
  CHECK(rj.find("\"residual\":0.25") != std::string::npos);

  const std::string sj = summary_to_json(1, {good, failed});
  CHECK(sj.find("\"trials\":1") != std::string::npos);
  CHECK(sj.find("\"records\":2") != std::string::npos);
  CHECK(sj.find("\"admissible\":{\"degenerate\":1,\"nonconvergent\":1}") !=
        std::string::npos);
}
