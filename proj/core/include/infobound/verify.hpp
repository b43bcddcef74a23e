#ifndef INFOBOUND_VERIFY_HPP
#define INFOBOUND_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infobound/bounds.hpp"

namespace infobound {

/// Exact violation mass of a 1-delta bound under its governing distribution.
struct CoverageAtomDetail {
  std::size_t w;
  std::size_t zn;
  double gen;
  double epsilon;  // +inf means the bound was infeasible at this atom
  bool violated;
};

struct CoverageReport {
  std::string bound_id;
  double delta = 0.0;
  double violation_mass = 0.0;
  bool pass = false;
  std::vector<CoverageAtomDetail> per_atom_detail;  // filled only on request

  std::string to_json() const;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

struct Theorem1Report {
  double max_expectation = 0.0;
  double argmax_lambda = 0.0;
  bool pass = false;
};

struct AverageReport {
  double abs_mean_gen = 0.0;
  double epsilon = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct LemmaSplitReport {
  double epsilon = 0.0;
  double gamma = 0.0;
  double p_event = 0.0;
  double strict_tail = 0.0;
  double q_event = 0.0;
  bool pass = false;
};

struct HoeffdingCell {
  std::size_t w = 0;
  double epsilon = 0.0;
  double exact_tail = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct OrderingReport {
  double leakage = 0.0;
  double max_information = 0.0;
  double mi_plus_moment_inf = 0.0;
  bool pass = false;
};

/// 81 points evenly spaced on [-50, 50] plus {-1e3, 1e3}.
std::vector<double> default_lambda_grid();

/// Exact check of E[exp(lambda gen - lambda^2 sigma^2 / (2n) - i)] <= 1
/// over the lambda grid.
Theorem1Report theorem1_check(const JointModel& model,
                              const LearningProblem& problem, double sigma,
                              const std::vector<double>& lambda_grid);

/// Exact violation mass of a single-draw bound under P_{W Z^n}. For
/// single_draw_data, epsilon is per-atom and infeasible atoms count as
/// violations; strong_converse uses the optimized gamma.
CoverageReport coverage_single_draw(const JointModel& model,
                                    const LearningProblem& problem,
                                    const BoundQuery& query,
                                    double epsilon_scale = 1.0,
                                    bool keep_atom_detail = false);

/// Exact violation mass of a PAC-Bayesian bound under P_{Z^n}.
CoverageReport coverage_pac_bayes(const JointModel& model,
                                  const LearningProblem& problem,
                                  const BoundQuery& query,
                                  double epsilon_scale = 1.0,
                                  bool keep_atom_detail = false);

/// |E[gen]| against the average bound, exact to 1e-12.
AverageReport coverage_average(const JointModel& model,
                               const LearningProblem& problem, double sigma);

/// P[E] <= P[i > gamma] + e^gamma Q[E] with E = {|gen| > epsilon},
/// P the joint and Q the product of marginals. The tail here is strict
/// (i > gamma), unlike the inclusive tail the strong-converse bound uses;
/// the two differ on atomic distributions.
LemmaSplitReport lemma_split_check(const JointModel& model,
                                   const LearningProblem& problem,
                                   double epsilon, double gamma);

/// P_{Z^n}[|gen(w, Z^n)| > eps] <= 2 exp(-n eps^2 / (2 sigma^2)) for every
/// hypothesis and every grid epsilon, via exact enumeration of Z^n.
std::vector<HoeffdingCell> hoeffding_tail_check(
    const LearningProblem& problem, const FiniteDistribution& p_z, int n,
    double sigma, const std::vector<double>& epsilon_grid,
    std::size_t atom_budget = kDefaultAtomBudget);

/// L <= I_max <= I + M_inf, each within 1e-9.
OrderingReport ordering_check(const JointModel& model);

/// Samples (z^n, w) through the learner without materializing the joint and
/// estimates the violation frequency of a bound with known epsilon.
/// Per-atom bounds (single_draw_data, pac_bayes_data) are not estimable.
McEstimate coverage_monte_carlo(const LearningProblem& problem,
                                const LearnerSpec& learner,
                                const FiniteDistribution& p_z, int n,
                                BoundId bound_id, double epsilon,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace infobound

#endif  // INFOBOUND_VERIFY_HPP
