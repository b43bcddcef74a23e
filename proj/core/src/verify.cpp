#include "infobound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "infobound/logsum.hpp"
#include "infobound/rng.hpp"

namespace infobound {

namespace {

constexpr double kCheckTol = 1e-12;

double gen_value(const LearningProblem& problem, const FiniteDistribution& p_z,
                 int n, std::size_t w, std::size_t zn,
                 std::vector<std::size_t>& scratch) {
  decode_tuple(zn, n, p_z.size(), scratch);
  double empirical = 0.0;
  for (std::size_t z : scratch) {
    empirical += problem.loss(w, z);
  }
  empirical /= static_cast<double>(n);
  double population = 0.0;
  for (std::size_t z = 0; z < p_z.size(); ++z) {
    population += p_z.prob(z) * problem.loss(w, z);
  }
  return empirical - population;
}

bool is_single_draw(BoundId id) {
  switch (id) {
    case BoundId::kSingleDrawData:
    case BoundId::kSingleDrawMoment:
    case BoundId::kSingleDrawMInf:
    case BoundId::kSingleDrawLeakage:
    case BoundId::kStrongConverse:
    case BoundId::kBaselineMi:
    case BoundId::kBaselineAlpha:
    case BoundId::kRederivedMoment:
    case BoundId::kRederivedLeakage:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  grid.reserve(83);
  grid.push_back(-1e3);
  for (int i = 0; i <= 80; ++i) {
    grid.push_back(-50.0 + 1.25 * i);
  }
  grid.push_back(1e3);
  return grid;
}

Theorem1Report theorem1_check(const JointModel& model,
                              const LearningProblem& problem, double sigma,
                              const std::vector<double>& lambda_grid) {
  const InfoProfile profile = information_profile(model);
  std::vector<std::size_t> scratch;
  std::vector<double> gen_values;
  gen_values.reserve(profile.atoms().size());
  for (const auto& atom : profile.atoms()) {
    gen_values.push_back(
        gen_value(problem, model.p_z(), model.n(), atom.w, atom.zn, scratch));
  }

  Theorem1Report report;
  report.max_expectation = kNegInf;
  std::vector<double> terms(profile.atoms().size());
  for (double lambda : lambda_grid) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& atom = profile.atoms()[i];
      terms[i] = atom.log_joint + lambda * gen_values[i] - atom.density;
    }
    const double penalty = lambda * lambda * sigma * sigma / (2.0 * model.n());
    const double expectation = std::exp(log_sum_exp(terms) - penalty);
    if (expectation > report.max_expectation) {
      report.max_expectation = expectation;
      report.argmax_lambda = lambda;
    }
  }
  report.pass = report.max_expectation <= 1.0 + 1e-9;
  return report;
}

CoverageReport coverage_single_draw(const JointModel& model,
                                    const LearningProblem& problem,
                                    const BoundQuery& query,
                                    double epsilon_scale,
                                    bool keep_atom_detail) {
  if (!is_single_draw(query.bound_id)) {
    throw std::invalid_argument("coverage_single_draw needs a single-draw bound");
  }
  const bool per_atom = query.bound_id == BoundId::kSingleDrawData;
  double fixed_epsilon = 0.0;
  bool fixed_feasible = true;
  if (!per_atom) {
    const BoundResult result = evaluate_bound(model, query);
    fixed_epsilon = result.epsilon * epsilon_scale;
    fixed_feasible = result.feasible;
  }

  const InfoProfile profile = information_profile(model);
  std::vector<std::size_t> scratch;
  KahanSum mass;
  CoverageReport report;
  report.bound_id = bound_id_name(query.bound_id);
  report.delta = query.delta;
  for (const auto& atom : profile.atoms()) {
    const double gen =
        gen_value(problem, model.p_z(), model.n(), atom.w, atom.zn, scratch);
    double epsilon = fixed_epsilon;
    bool feasible = fixed_feasible;
    if (per_atom) {
      const BoundResult r = single_draw_pointwise_bound(atom.density, query.delta,
                                                        query.sigma, query.n);
      feasible = r.feasible;
      epsilon = r.epsilon * epsilon_scale;
    }
    // infeasible evaluations count as violations
    const bool violated = !feasible || std::abs(gen) > epsilon;
    if (violated) mass.add(std::exp(atom.log_joint));
    if (keep_atom_detail) {
      report.per_atom_detail.push_back(
          {atom.w, atom.zn, gen, feasible ? epsilon : std::numeric_limits<double>::infinity(),
           violated});
    }
  }
  report.violation_mass = std::min(mass.value(), 1.0);
  report.pass = report.violation_mass <= query.delta + kCheckTol;
  return report;
}

CoverageReport coverage_pac_bayes(const JointModel& model,
                                  const LearningProblem& problem,
                                  const BoundQuery& query, double epsilon_scale,
                                  bool keep_atom_detail) {
  if (query.bound_id != BoundId::kPacBayesData &&
      query.bound_id != BoundId::kPacBayesMoment) {
    throw std::invalid_argument("coverage_pac_bayes needs a PAC-Bayesian bound");
  }
  const bool per_dataset = query.bound_id == BoundId::kPacBayesData;
  double fixed_epsilon = 0.0;
  if (!per_dataset) {
    fixed_epsilon =
        pac_bayes_moment_bound(model, query.delta, query.m, query.sigma, query.n)
            .epsilon *
        epsilon_scale;
  }

  std::vector<std::size_t> scratch;
  KahanSum mass;
  CoverageReport report;
  report.bound_id = bound_id_name(query.bound_id);
  report.delta = query.delta;
  for (std::size_t zn = 0; zn < model.dataset_count(); ++zn) {
    const double lp_zn = model.p_zn().log_prob(zn);
    if (lp_zn == kNegInf) continue;
    const auto& cond = model.kernel().conditional(zn);
    KahanSum mean_gen;
    for (std::size_t w = 0; w < cond.size(); ++w) {
      const double lc = cond.log_prob(w);
      if (lc == kNegInf) continue;
      mean_gen.add(std::exp(lc) *
                   gen_value(problem, model.p_z(), model.n(), w, zn, scratch));
    }
    const double epsilon =
        per_dataset
            ? pac_bayes_bound(model, zn, query.delta, query.sigma, query.n)
                      .epsilon *
                  epsilon_scale
            : fixed_epsilon;
    const bool violated = std::abs(mean_gen.value()) > epsilon;
    if (violated) mass.add(std::exp(lp_zn));
    if (keep_atom_detail) {
      report.per_atom_detail.push_back({0, zn, mean_gen.value(), epsilon, violated});
    }
  }
  report.violation_mass = std::min(mass.value(), 1.0);
  report.pass = report.violation_mass <= query.delta + kCheckTol;
  return report;
}

AverageReport coverage_average(const JointModel& model,
                               const LearningProblem& problem, double sigma) {
  const double mean_gen = expect(model, [&](std::size_t w, std::size_t zn) {
    return gen_error(problem, model, w, zn);
  });
  AverageReport report;
  report.abs_mean_gen = std::abs(mean_gen);
  report.epsilon = avg_gen_bound(model, sigma, model.n()).epsilon;
  report.slack = report.epsilon - report.abs_mean_gen;
  report.pass = report.abs_mean_gen <= report.epsilon + kCheckTol;
  return report;
}

LemmaSplitReport lemma_split_check(const JointModel& model,
                                   const LearningProblem& problem,
                                   double epsilon, double gamma) {
  const InfoProfile profile = information_profile(model);
  std::vector<std::size_t> scratch;
  KahanSum p_event;
  KahanSum strict_tail;
  for (const auto& atom : profile.atoms()) {
    const double gen =
        gen_value(problem, model.p_z(), model.n(), atom.w, atom.zn, scratch);
    if (std::abs(gen) > epsilon) p_event.add(std::exp(atom.log_joint));
    if (atom.density > gamma) strict_tail.add(std::exp(atom.log_joint));
  }
  // Q[E] runs over the full product support, joint-null atoms included.
  KahanSum q_event;
  for (std::size_t w = 0; w < model.hypothesis_count(); ++w) {
    const double lp_w = model.p_w().log_prob(w);
    if (lp_w == kNegInf) continue;
    for (std::size_t zn = 0; zn < model.dataset_count(); ++zn) {
      const double lp_zn = model.p_zn().log_prob(zn);
      if (lp_zn == kNegInf) continue;
      const double gen = gen_value(problem, model.p_z(), model.n(), w, zn, scratch);
      if (std::abs(gen) > epsilon) q_event.add(std::exp(lp_w + lp_zn));
    }
  }
  LemmaSplitReport report;
  report.epsilon = epsilon;
  report.gamma = gamma;
  report.p_event = p_event.value();
  report.strict_tail = strict_tail.value();
  report.q_event = q_event.value();
  report.pass = report.p_event <=
                report.strict_tail + std::exp(gamma) * report.q_event + kCheckTol;
  return report;
}

std::vector<HoeffdingCell> hoeffding_tail_check(
    const LearningProblem& problem, const FiniteDistribution& p_z, int n,
    double sigma, const std::vector<double>& epsilon_grid,
    std::size_t atom_budget) {
  const FiniteDistribution p_zn = product_power(p_z, n, atom_budget);
  std::vector<std::size_t> scratch;
  std::vector<HoeffdingCell> cells;
  cells.reserve(problem.hypotheses().size() * epsilon_grid.size());
  for (std::size_t w = 0; w < problem.hypotheses().size(); ++w) {
    for (double epsilon : epsilon_grid) {
      KahanSum tail;
      for (std::size_t zn = 0; zn < p_zn.size(); ++zn) {
        const double lp = p_zn.log_prob(zn);
        if (lp == kNegInf) continue;
        if (std::abs(gen_value(problem, p_z, n, w, zn, scratch)) > epsilon) {
          tail.add(std::exp(lp));
        }
      }
      HoeffdingCell cell;
      cell.w = w;
      cell.epsilon = epsilon;
      cell.exact_tail = tail.value();
      cell.bound = 2.0 * std::exp(-n * epsilon * epsilon / (2.0 * sigma * sigma));
      cell.pass = cell.exact_tail <= cell.bound + kCheckTol;
      cells.push_back(cell);
    }
  }
  return cells;
}

OrderingReport ordering_check(const JointModel& model) {
  const InfoProfile profile = information_profile(model);
  OrderingReport report;
  report.leakage = maximal_leakage(model);
  report.max_information = max_information(profile);
  report.mi_plus_moment_inf =
      mutual_information(profile) + moment_root_infinity(profile);
  report.pass = report.leakage <= report.max_information + 1e-9 &&
                report.max_information <= report.mi_plus_moment_inf + 1e-9;
  return report;
}

McEstimate coverage_monte_carlo(const LearningProblem& problem,
                                const LearnerSpec& learner,
                                const FiniteDistribution& p_z, int n,
                                BoundId bound_id, double epsilon,
                                std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1000) {
    throw std::invalid_argument("Monte Carlo needs at least 1000 samples");
  }
  if (bound_id == BoundId::kSingleDrawData || bound_id == BoundId::kPacBayesData ||
      bound_id == BoundId::kAverage) {
    throw std::invalid_argument(
        "bound not MC-estimable: " + bound_id_name(bound_id) +
        " needs per-atom quantities that sampling cannot provide");
  }
  const bool single_draw = is_single_draw(bound_id);

  std::vector<double> z_probs(p_z.size());
  for (std::size_t z = 0; z < p_z.size(); ++z) {
    z_probs[z] = p_z.prob(z);
  }
  const std::size_t n_w = problem.hypotheses().size();
  std::vector<double> population(n_w, 0.0);
  for (std::size_t w = 0; w < n_w; ++w) {
    for (std::size_t z = 0; z < p_z.size(); ++z) {
      population[w] += z_probs[z] * problem.loss(w, z);
    }
  }

  const auto draw_index = [](double u, const std::vector<double>& probs) {
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return i;
    }
    return probs.size() - 1;
  };

  std::vector<std::size_t> zs(static_cast<std::size_t>(n));
  std::vector<double> cond_probs(n_w);
  std::uint64_t violations = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    SplitMix64 stream = SplitMix64::for_counter(seed, i);
    for (int k = 0; k < n; ++k) {
      zs[static_cast<std::size_t>(k)] = draw_index(stream.next_double(), z_probs);
    }
    const std::vector<double> cond_log = conditional_log_probs(problem, learner, zs);
    bool violated = false;
    if (single_draw) {
      for (std::size_t w = 0; w < n_w; ++w) {
        cond_probs[w] = cond_log[w] == kNegInf ? 0.0 : std::exp(cond_log[w]);
      }
      const std::size_t w = draw_index(stream.next_double(), cond_probs);
      double empirical = 0.0;
      for (std::size_t z : zs) {
        empirical += problem.loss(w, z);
      }
      empirical /= static_cast<double>(n);
      violated = std::abs(empirical - population[w]) > epsilon;
    } else {  // pac_bayes_moment: posterior-averaged generalization error
      KahanSum mean_gen;
      for (std::size_t w = 0; w < n_w; ++w) {
        if (cond_log[w] == kNegInf) continue;
        double empirical = 0.0;
        for (std::size_t z : zs) {
          empirical += problem.loss(w, z);
        }
        empirical /= static_cast<double>(n);
        mean_gen.add(std::exp(cond_log[w]) * (empirical - population[w]));
      }
      violated = std::abs(mean_gen.value()) > epsilon;
    }
    if (violated) ++violations;
  }

  McEstimate estimate;
  estimate.samples = samples;
  estimate.seed = seed;
  estimate.estimate =
      static_cast<double>(violations) / static_cast<double>(samples);
  estimate.std_error = std::sqrt(estimate.estimate * (1.0 - estimate.estimate) /
                                 static_cast<double>(samples));
  return estimate;
}

std::string CoverageReport::to_json() const {
  nlohmann::ordered_json j;
  j["bound_id"] = bound_id;
  j["delta"] = delta;
  j["violation_mass"] = violation_mass;
  j["pass"] = pass;
  if (!per_atom_detail.empty()) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (const auto& atom : per_atom_detail) {
      nlohmann::ordered_json a;
      a["w"] = atom.w;
      a["zn"] = atom.zn;
      a["gen"] = atom.gen;
      if (std::isinf(atom.epsilon)) {
        a["epsilon"] = "inf";
      } else {
        a["epsilon"] = atom.epsilon;
      }
      a["violated"] = atom.violated;
      atoms.push_back(a);
    }
    j["per_atom_detail"] = atoms;
  }
  return j.dump();
}

std::string McEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["estimate"] = estimate;
  j["std_error"] = std_error;
  j["samples"] = samples;
  j["seed"] = seed;
  return j.dump();
}

}  // namespace infobound
