#include <cmath>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "golden.hpp"
#include "infobound/bounds.hpp"
#include "infobound/rng.hpp"

using namespace infobound;

namespace {

const double kLog2 = std::log(2.0);

JointModel copy_model() {
  return golden::build_core_model(golden::make_copy_channel());
}
JointModel indep_model() {
  return golden::build_core_model(golden::make_independent());
}
JointModel gibbs_model() {
  return golden::build_core_model(golden::make_gibbs_golden());
}

}  // namespace

TEST_CASE("gen_error on the copy channel") {
  const auto g = golden::make_copy_channel();
  const auto problem = golden::make_problem(g);
  const auto model = copy_model();
  CHECK(gen_error(problem, model, 0, 0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(gen_error(problem, model, 0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gen_error(problem, model, 1, 1) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("gen_error vanishes for a constant loss") {
  auto g = golden::make_gibbs_golden();
  g.loss = {{0.7, 0.7}, {0.7, 0.7}};
  const auto problem = golden::make_problem(g);
  const auto model = golden::build_core_model(g);
  for (std::size_t zn = 0; zn < model.dataset_count(); ++zn) {
    for (std::size_t w = 0; w < model.hypothesis_count(); ++w) {
      CHECK(std::abs(gen_error(problem, model, w, zn)) <= 1e-15);
    }
  }
}

TEST_CASE("average bound") {
  CHECK(avg_gen_bound(indep_model(), 0.5, 1).epsilon ==
        doctest::Approx(0.0).epsilon(1e-7));
  CHECK(avg_gen_bound(copy_model(), 0.5, 1).epsilon ==
        doctest::Approx(0.588705011257737).epsilon(1e-12));
}

TEST_CASE("quadrupling n halves every bound exactly") {
  SplitMix64 stream(42);
  for (int trial = 0; trial < 50; ++trial) {
    const double mi = 2.0 * stream.next_double();
    const double root = 1.5 * stream.next_double();
    const double leakage = mi + stream.next_double();
    const double delta = 0.05 + 0.45 * stream.next_double();
    const double m = 1.0 + 7.0 * stream.next_double();
    const double sigma = 0.1 + 1.4 * stream.next_double();
    const int n = 1 + static_cast<int>(stream.next_u64() % 64);
    CHECK(avg_gen_epsilon(mi, sigma, 4 * n) == avg_gen_epsilon(mi, sigma, n) / 2.0);
    CHECK(single_draw_moment_epsilon(mi, root, delta, m, sigma, 4 * n) ==
          single_draw_moment_epsilon(mi, root, delta, m, sigma, n) / 2.0);
    CHECK(single_draw_leakage_epsilon(leakage, delta, sigma, 4 * n) ==
          single_draw_leakage_epsilon(leakage, delta, sigma, n) / 2.0);
    CHECK(baseline_mi_epsilon(mi, delta, sigma, 4 * n) ==
          baseline_mi_epsilon(mi, delta, sigma, n) / 2.0);
  }
}

TEST_CASE("PAC-Bayesian data-dependent bound") {
  CHECK(pac_bayes_bound(indep_model(), 0, 0.5, 0.5, 1).epsilon ==
        doctest::Approx(0.588705011257737).epsilon(1e-12));
  for (std::size_t zn : {0, 1}) {
    CHECK(pac_bayes_bound(copy_model(), zn, 0.1, 0.5, 1).epsilon ==
          doctest::Approx(1.22387341534041).epsilon(1e-12));
  }
  // delta -> 1 with zero divergence sends epsilon to zero
  CHECK(pac_bayes_bound(indep_model(), 0, 1.0 - 1e-9, 0.5, 1).epsilon <= 1e-4);

  auto g = golden::make_copy_channel();
  g.p_z_weights = {1.0, 0.0};
  auto degenerate = golden::build_core_model(g);
  CHECK_THROWS_WITH_AS(pac_bayes_bound(degenerate, 1, 0.1, 0.5, 1),
                       doctest::Contains("conditioning on null set"),
                       std::invalid_argument);
}

TEST_CASE("PAC-Bayesian moment bound") {
  for (double m : {1.0, 2.0, 4.0}) {
    CHECK(pac_bayes_moment_bound(indep_model(), 0.5, m, 0.5, 1).epsilon ==
          doctest::Approx(0.832554611157698).epsilon(1e-12));
  }
  // m = 1 reduces to I / (delta/2) + log(2/delta)
  const auto gibbs = gibbs_model();
  const double mi = mutual_information(information_profile(gibbs));
  CHECK(pac_bayes_moment_bound(gibbs, 0.1, 1.0, 0.5, 2).epsilon ==
        doctest::Approx(bound_radius(mi / 0.05 + std::log(20.0), 0.5, 2))
            .epsilon(1e-12));
  // constant divergence: higher m is strictly smaller
  const double m1 = pac_bayes_moment_bound(copy_model(), 0.1, 1.0, 0.5, 1).epsilon;
  const double m8 = pac_bayes_moment_bound(copy_model(), 0.1, 8.0, 0.5, 1).epsilon;
  CHECK(m1 == doctest::Approx(2.90333221357399).epsilon(1e-12));
  CHECK(m8 == doctest::Approx(1.41487059499728).epsilon(1e-12));
  CHECK(m8 < m1);
  CHECK_THROWS_AS(pac_bayes_moment_bound(copy_model(), 0.1, 0.0, 0.5, 1),
                  std::invalid_argument);
}

TEST_CASE("single-draw pointwise bound and its footnote case") {
  const auto feasible = single_draw_pointwise_bound(kLog2, 0.1, 0.5, 1);
  CHECK(feasible.feasible);
  CHECK(feasible.epsilon == doctest::Approx(1.22387341534041).epsilon(1e-12));

  const auto zero = single_draw_pointwise_bound(0.0, 0.5, 0.5, 1);
  CHECK(zero.epsilon == doctest::Approx(0.588705011257737).epsilon(1e-12));

  const auto degenerate = single_draw_pointwise_bound(-3.0, 0.5, 0.5, 1);
  CHECK(!degenerate.feasible);
  CHECK(std::isinf(degenerate.epsilon));
}

TEST_CASE("single-draw moment bound") {
  CHECK(single_draw_moment_bound(copy_model(), 0.1, 2.0, 0.5, 1).epsilon ==
        doctest::Approx(1.35810151574062).epsilon(1e-12));
  CHECK(single_draw_moment_bound(indep_model(), 0.5, 3.0, 0.5, 1).epsilon ==
        doctest::Approx(0.832554611157698).epsilon(1e-12));

  const auto gibbs = gibbs_model();
  const double frozen[2][3] = {{0.861339617323142, 0.794284433138836,
                                0.817780317961318},
                               {1.60052745559211, 1.15500170398012,
                                1.10019240732278}};
  const double deltas[2] = {0.5, 0.1};
  const double ms[3] = {1.0, 2.0, 4.0};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(single_draw_moment_bound(gibbs, deltas[i], ms[k], 0.5, 2).epsilon ==
            doctest::Approx(frozen[i][k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-draw m -> infinity bound") {
  CHECK(single_draw_m_infinity_bound(copy_model(), 0.1, 0.5, 1).epsilon ==
        doctest::Approx(1.35810151574062).epsilon(1e-12));
  CHECK(single_draw_m_infinity_bound(indep_model(), 0.5, 0.5, 1).epsilon ==
        doctest::Approx(0.832554611157698).epsilon(1e-12));
  const auto gibbs = gibbs_model();
  CHECK(single_draw_m_infinity_bound(gibbs, 0.1, 0.5, 2).epsilon ==
        doctest::Approx(1.09056481117696).epsilon(1e-12));
  // dominates the finite-m bound whenever M_m/(delta/2)^{1/m} <= M_inf
  const auto profile = information_profile(gibbs);
  for (double delta : {0.5, 0.25, 0.1, 0.05}) {
    const double minf_eps =
        single_draw_m_infinity_bound(gibbs, delta, 0.5, 2).epsilon;
    for (double m : {1.0, 2.0, 4.0}) {
      const double scaled = central_moment_root(profile, m) /
                            std::pow(delta / 2.0, 1.0 / m);
      if (scaled <= moment_root_infinity(profile)) {
        CHECK(minf_eps >=
              single_draw_moment_bound(gibbs, delta, m, 0.5, 2).epsilon - 1e-12);
      }
    }
  }
}

TEST_CASE("single-draw leakage bound") {
  CHECK(single_draw_leakage_bound(copy_model(), 0.1, 0.5, 1).epsilon ==
        doctest::Approx(1.82819743568192).epsilon(1e-12));
  CHECK(single_draw_leakage_bound(indep_model(), 0.5, 0.5, 1).epsilon ==
        doctest::Approx(1.17741002251547).epsilon(1e-12));
  // at this delta the leakage bound exceeds the m -> infinity bound
  CHECK(single_draw_leakage_bound(copy_model(), 0.1, 0.5, 1).epsilon >
        single_draw_m_infinity_bound(copy_model(), 0.1, 0.5, 1).epsilon);
}

TEST_CASE("strong converse bound") {
  const auto copy = copy_model();
  const auto above = strong_converse_bound(copy, 0.1, kLog2 + 1e-9, 0.5, 1);
  CHECK(above.feasible);
  CHECK(above.detail.at("tail") == 0.0);
  CHECK(above.epsilon == doctest::Approx(1.3581015159247).epsilon(1e-12));

  // inclusive tail at the boundary: the whole mass sits at log 2
  const auto at = strong_converse_bound(copy, 0.1, kLog2, 0.5, 1);
  CHECK(!at.feasible);
  CHECK(std::isinf(at.epsilon));

  const auto indep = strong_converse_bound(indep_model(), 0.5, 1e-9, 0.5, 1);
  CHECK(indep.feasible);
  CHECK(indep.epsilon == doctest::Approx(0.832554611457978).epsilon(1e-12));
}

TEST_CASE("optimized strong converse") {
  const auto copy = optimize_strong_converse(copy_model(), 0.1, 0.5, 1);
  CHECK(copy.feasible);
  CHECK(copy.epsilon == doctest::Approx(1.3581015159247).epsilon(1e-12));
  CHECK(copy.detail.at("gamma") == doctest::Approx(kLog2 + 1e-9).epsilon(1e-12));
  CHECK(copy.detail.at("gamma_optimized") == 1.0);

  const auto indep = optimize_strong_converse(indep_model(), 0.5, 0.5, 1);
  CHECK(indep.feasible);
  CHECK(indep.epsilon == doctest::Approx(0.832554611457978).epsilon(1e-12));
  CHECK(indep.detail.at("gamma") >= -1e-12);
  CHECK(indep.detail.at("gamma") <= 2e-9);

  // never worse than the bound at any candidate gamma it examined
  const auto gibbs = gibbs_model();
  const auto best = optimize_strong_converse(gibbs, 0.25, 0.5, 2);
  CHECK(best.epsilon == doctest::Approx(0.813274355952038).epsilon(1e-12));
  const auto gibbs_profile = information_profile(gibbs);
  for (const auto& atom : gibbs_profile.atoms()) {
    for (double gamma : {atom.density, atom.density + 1e-9}) {
      const auto at_gamma = strong_converse_bound(gibbs, 0.25, gamma, 0.5, 2);
      if (at_gamma.feasible) {
        CHECK(best.epsilon <= at_gamma.epsilon + 1e-15);
      }
    }
  }

  // beats the rederived moment bound on the Gibbs case for m in {1, 2, 4}
  for (double delta : {0.5, 0.25, 0.1, 0.05}) {
    const double opt = optimize_strong_converse(gibbs, delta, 0.5, 2).epsilon;
    for (double m : {1.0, 2.0, 4.0}) {
      CHECK(opt <= rederived_moment_bound(gibbs, delta, m, 0.5, 2).epsilon + 1e-12);
    }
  }
}

TEST_CASE("baseline mutual-information bound") {
  CHECK(baseline_mi_bound(copy_model(), 0.1, 0.5, 1).epsilon ==
        doctest::Approx(2.33189287061755).epsilon(1e-12));
  CHECK(baseline_mi_bound(indep_model(), 0.5, 0.5, 1).epsilon ==
        doctest::Approx(1.01966699016881).epsilon(1e-12));
  // 1/sqrt(delta) regime: eps(delta/4)/eps(delta) approaches 2
  const auto copy = copy_model();
  const double ratio = baseline_mi_bound(copy, 1e-6 / 4.0, 0.5, 1).epsilon /
                       baseline_mi_bound(copy, 1e-6, 0.5, 1).epsilon;
  CHECK(std::abs(ratio - 2.0) <= 1e-3);
}

TEST_CASE("baseline alpha bound") {
  CHECK(baseline_alpha_bound(copy_model(), 0.1, 2.0, 0.5, 1).epsilon ==
        doctest::Approx(1.73081838260229).epsilon(1e-12));
  CHECK(baseline_alpha_bound(indep_model(), 0.5, 2.0, 0.5, 1).epsilon ==
        doctest::Approx(1.01966699016881).epsilon(1e-12));
  CHECK(baseline_alpha_bound(copy_model(), 0.1, 100.0, 0.5, 1).epsilon <
        baseline_alpha_bound(copy_model(), 0.1, 2.0, 0.5, 1).epsilon);
  CHECK_THROWS_WITH_AS(baseline_alpha_bound(copy_model(), 0.1, 1.0, 0.5, 1),
                       doctest::Contains("alpha out of range"),
                       std::invalid_argument);
}

TEST_CASE("rederived bounds and their log-2 identities") {
  CHECK(rederived_moment_bound(copy_model(), 0.1, 2.0, 0.5, 1).epsilon ==
        doctest::Approx(1.4802071873008).epsilon(1e-12));
  CHECK(rederived_leakage_bound(copy_model(), 0.1, 0.5, 1).epsilon ==
        doctest::Approx(1.92064558263984).epsilon(1e-12));
  CHECK(rederived_leakage_bound(indep_model(), 0.5, 0.5, 1).epsilon ==
        doctest::Approx(1.31638442386708).epsilon(1e-12));

  SplitMix64 stream(7);
  for (int trial = 0; trial < 100; ++trial) {
    const double mi = 1.5 * stream.next_double();
    const double root = 1.5 * stream.next_double();
    const double leakage = mi + 0.5 * stream.next_double();
    const double delta = 0.05 + 0.45 * stream.next_double();
    const double m = 1.0 + 7.0 * stream.next_double();
    const double sigma = 0.1 + 1.4 * stream.next_double();
    const int n = 1 + static_cast<int>(stream.next_u64() % 16);
    const double c = 2.0 * sigma * sigma / n;

    const double sd = single_draw_moment_epsilon(mi, root, delta, m, sigma, n);
    const double re = rederived_moment_epsilon(mi, root, delta, m, sigma, n);
    CHECK(std::abs(re * re - sd * sd - c * kLog2) <= 1e-12);

    const double sl = single_draw_leakage_epsilon(leakage, delta, sigma, n);
    const double rl = rederived_leakage_epsilon(leakage, delta, sigma, n);
    CHECK(std::abs(rl * rl - sl * sl - c * kLog2) <= 1e-12);
  }

  // matches the strong-converse form at gamma = I + M_m/(delta/2)^{1/m}
  // with the exact tail replaced by its Markov cap delta/2
  const auto gibbs = gibbs_model();
  const auto profile = information_profile(gibbs);
  for (double m : {1.0, 2.0, 4.0}) {
    const double mi = mutual_information(profile);
    const double gamma_star =
        mi + central_moment_root(profile, m) / std::pow(0.05, 1.0 / m);
    const double via_gamma = bound_radius(gamma_star + std::log(4.0 / 0.1), 0.5, 2);
    CHECK(rederived_moment_bound(gibbs, 0.1, m, 0.5, 2).epsilon ==
          doctest::Approx(via_gamma).epsilon(1e-14));
  }
}

TEST_CASE("every bound is nonincreasing in delta") {
  const auto models = {copy_model(), gibbs_model()};
  const double deltas[] = {0.05, 0.1, 0.25, 0.5};
  for (const auto& model : models) {
    const int n = model.n();
    for (const auto& name :
       {"pac_bayes_data", "pac_bayes_moment", "single_draw_data",
        "single_draw_moment", "single_draw_m_inf", "single_draw_leakage",
        "strong_converse", "baseline_mi", "baseline_alpha", "rederived_moment",
        "rederived_leakage"}) {
      BoundQuery query;
      query.bound_id = *bound_id_from_name(name);
      query.m = 2.0;
      query.alpha = 2.0;
      query.sigma = 0.5;
      query.n = n;
      double prev = std::numeric_limits<double>::infinity();
      for (double delta : deltas) {
        query.delta = delta;
        const auto result = evaluate_bound(model, query);
        if (result.feasible) {
          CHECK(result.epsilon <= prev + 1e-12);
          prev = result.epsilon;
        }
      }
    }
  }
}

TEST_CASE("bound result serialization") {
  const auto result = single_draw_moment_bound(copy_model(), 0.1, 2.0, 0.5, 1);
  const auto j = nlohmann::json::parse(
      result.to_json("single_draw_moment", {{"delta", 0.1}, {"m", 2.0}}));
  CHECK(j["bound_id"] == "single_draw_moment");
  CHECK(j["feasible"] == true);
  CHECK(j["epsilon"].get<double>() ==
        doctest::Approx(1.35810151574062).epsilon(1e-12));
  CHECK(j["params"]["delta"].get<double>() == 0.1);

  const auto infeasible = single_draw_pointwise_bound(-3.0, 0.5, 0.5, 1);
  const auto ji = nlohmann::json::parse(infeasible.to_json("single_draw_data", {}));
  CHECK(ji["epsilon"] == "inf");
  CHECK(ji["feasible"] == false);
}
