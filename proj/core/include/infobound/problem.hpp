#ifndef INFOBOUND_PROBLEM_HPP
#define INFOBOUND_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "infobound/joint.hpp"

namespace infobound {

/// Subgaussian parameter: either given by the user or derived from the loss
/// range. A constant loss makes the derived value degenerate (1e-12 stand-in).
struct ResolvedSigma {
  double value = 0.0;
  bool degenerate = false;
};

/// Finite learning problem: instance/hypothesis alphabets, a loss table
/// indexed loss[w][z], and the subgaussian parameter.
class LearningProblem {
 public:
  LearningProblem(Alphabet instances, Alphabet hypotheses,
                  std::vector<std::vector<double>> loss,
                  std::optional<double> sigma);

  const Alphabet& instances() const { return instances_; }
  const Alphabet& hypotheses() const { return hypotheses_; }
  double loss(std::size_t w, std::size_t z) const { return loss_[w][z]; }
  const std::vector<std::vector<double>>& loss_table() const { return loss_; }
  /// nullopt means "auto" (Hoeffding value from the loss range).
  std::optional<double> sigma_spec() const { return sigma_; }

 private:
  Alphabet instances_;
  Alphabet hypotheses_;
  std::vector<std::vector<double>> loss_;
  std::optional<double> sigma_;
};

enum class LearnerKind { kGibbs, kErmNoisy, kIndependent };

/// Recipe for the posterior kernel P(W | Z^n).
struct LearnerSpec {
  LearnerKind kind = LearnerKind::kGibbs;
  double beta = 1.0;                    // gibbs inverse temperature
  double noise = 0.0;                   // erm_noisy mixing weight
  std::vector<double> prior_weights;    // gibbs/independent; empty = uniform
};

/// Explicit sigma passes through; otherwise (max loss - min loss) / 2.
ResolvedSigma sigma_from_bounded_loss(const LearningProblem& problem);

/// P(w | z^n) proportional to prior(w) exp(-beta * sum_k loss(w, z_k)).
PosteriorKernel gibbs_kernel(const LearningProblem& problem, int n, double beta,
                             const FiniteDistribution& prior,
                             std::size_t atom_budget = kDefaultAtomBudget);

/// Uniform over the empirical-risk argmin set, mixed toward uniform over W
/// with weight `noise`.
PosteriorKernel erm_noisy_kernel(const LearningProblem& problem, int n,
                                 double noise,
                                 std::size_t atom_budget = kDefaultAtomBudget);

/// Every conditional equals the prior; I(W;Z^n) = 0 by construction.
PosteriorKernel independent_kernel(const FiniteDistribution& prior, int n,
                                   const Alphabet& instance_alphabet,
                                   std::size_t atom_budget = kDefaultAtomBudget);

/// Conditional P(W | Z^n = zs) for one dataset, as log probabilities over W.
/// Shared by kernel construction and joint-free Monte Carlo sampling.
std::vector<double> conditional_log_probs(const LearningProblem& problem,
                                          const LearnerSpec& learner,
                                          const std::vector<std::size_t>& zs);

/// Parsed problem-spec document.
struct ProblemSpec {
  LearningProblem problem;
  FiniteDistribution p_z;
  LearnerSpec learner;
  int n = 1;
};

/// Parses the JSON problem document:
///   {instances:[...], hypotheses:[...], p_z:[...], loss:[[...]],
///    sigma:"auto"|number, learner:{kind, beta?, prior?, noise?}, n}
/// Unknown fields are rejected.
ProblemSpec parse_problem_spec(const std::string& json_text);
ProblemSpec load_problem_spec(const std::string& path);

PosteriorKernel build_kernel(const ProblemSpec& spec, int n,
                             std::size_t atom_budget = kDefaultAtomBudget);

/// Joint model for the spec, with n optionally overridden.
JointModel build_model(const ProblemSpec& spec, std::optional<int> n_override = {},
                       std::size_t atom_budget = kDefaultAtomBudget);

}  // namespace infobound

#endif  // INFOBOUND_PROBLEM_HPP
