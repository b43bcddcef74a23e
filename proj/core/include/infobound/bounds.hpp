#ifndef INFOBOUND_BOUNDS_HPP
#define INFOBOUND_BOUNDS_HPP

#include <map>
#include <optional>
#include <string>

#include "infobound/measures.hpp"
#include "infobound/problem.hpp"

namespace infobound {

enum class BoundId {
  kAverage,
  kPacBayesData,
  kPacBayesMoment,
  kSingleDrawData,
  kSingleDrawMoment,
  kSingleDrawMInf,
  kSingleDrawLeakage,
  kStrongConverse,
  kBaselineMi,
  kBaselineAlpha,
  kRederivedMoment,
  kRederivedLeakage,
};

const std::string& bound_id_name(BoundId id);
std::optional<BoundId> bound_id_from_name(const std::string& name);

/// Bound identifier plus every parameter a bound may need. gamma absent
/// means "optimize" for the strong-converse bound.
struct BoundQuery {
  BoundId bound_id = BoundId::kAverage;
  double delta = 0.1;
  double m = 1.0;
  double alpha = 2.0;
  std::optional<double> gamma;
  double sigma = 0.5;
  int n = 1;
};

/// Outcome of a bound evaluation. Infeasible is a legitimate result (the
/// probability-at-most-delta degenerate case), not an error: it carries
/// epsilon = +inf.
struct BoundResult {
  double epsilon = 0.0;
  bool feasible = true;
  std::map<std::string, double> detail;

  std::string to_json(const std::string& bound_id,
                      const std::map<std::string, double>& params) const;
};

BoundResult infeasible_result(std::map<std::string, double> detail = {});

/// Empirical risk on the dataset minus population risk under P_Z.
double gen_error(const LearningProblem& problem, const JointModel& model,
                 std::size_t w, std::size_t zn_index);

/// sqrt((2 sigma^2 / n) * arg); the common radius of every bound here.
double bound_radius(double arg, double sigma, int n);

// Formula-level evaluators on raw measure values. The model-level wrappers
// below plug in exact measures; keeping these separate lets property tests
// inject arbitrary ones.
double avg_gen_epsilon(double mi, double sigma, int n);
double pac_bayes_epsilon(double divergence, double delta, double sigma, int n);
double pac_bayes_moment_epsilon(double div_moment_root, double delta, double m,
                                double sigma, int n);
BoundResult single_draw_pointwise_bound(double density_value, double delta,
                                        double sigma, int n);
double single_draw_moment_epsilon(double mi, double moment_root, double delta,
                                  double m, double sigma, int n);
double single_draw_m_infinity_epsilon(double mi, double moment_inf, double delta,
                                      double sigma, int n);
double single_draw_leakage_epsilon(double leakage, double delta, double sigma,
                                   int n);
double baseline_mi_epsilon(double mi, double delta, double sigma, int n);
double baseline_alpha_epsilon(double alpha_mi, double delta, double alpha,
                              double sigma, int n);
double rederived_moment_epsilon(double mi, double moment_root, double delta,
                                double m, double sigma, int n);
double rederived_leakage_epsilon(double leakage, double delta, double sigma,
                                 int n);

// Model-level bound evaluators.
BoundResult avg_gen_bound(const JointModel& model, double sigma, int n);
BoundResult pac_bayes_bound(const JointModel& model, std::size_t zn_index,
                            double delta, double sigma, int n);
BoundResult pac_bayes_moment_bound(const JointModel& model, double delta,
                                   double m, double sigma, int n);
BoundResult single_draw_moment_bound(const JointModel& model, double delta,
                                     double m, double sigma, int n);
BoundResult single_draw_m_infinity_bound(const JointModel& model, double delta,
                                         double sigma, int n);
BoundResult single_draw_leakage_bound(const JointModel& model, double delta,
                                      double sigma, int n);
BoundResult strong_converse_bound(const JointModel& model, double delta,
                                  double gamma, double sigma, int n);
/// Minimizes the strong-converse bound over the finite candidate set of
/// density values (each value v and v + 1e-9, plus min density - 1e-9).
/// Ties break toward the smaller gamma.
BoundResult optimize_strong_converse(const JointModel& model, double delta,
                                     double sigma, int n);
BoundResult baseline_mi_bound(const JointModel& model, double delta,
                              double sigma, int n);
BoundResult baseline_alpha_bound(const JointModel& model, double delta,
                                 double alpha, double sigma, int n);
BoundResult rederived_moment_bound(const JointModel& model, double delta,
                                   double m, double sigma, int n);
BoundResult rederived_leakage_bound(const JointModel& model, double delta,
                                    double sigma, int n);

/// Dispatch on query.bound_id. Data-dependent bounds (pac_bayes_data,
/// single_draw_data) report their worst case over the support.
BoundResult evaluate_bound(const JointModel& model, const BoundQuery& query);

}  // namespace infobound

#endif  // INFOBOUND_BOUNDS_HPP
