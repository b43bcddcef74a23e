#ifndef INFOBOUND_DISTRIBUTION_HPP
#define INFOBOUND_DISTRIBUTION_HPP

#include <span>
#include <vector>

#include "infobound/alphabet.hpp"
#include "infobound/logsum.hpp"

namespace infobound {

/// Normalized probability distribution over an Alphabet, stored in the log
/// domain. Entries of -inf mark atoms outside the support.
class FiniteDistribution {
 public:
  /// `log_probs` must already be normalized: log-sum-exp within 1e-12 of 0
  /// and no entry above 1e-12 (tiny positive rounding is clamped to 0).
  FiniteDistribution(Alphabet alphabet, std::vector<double> log_probs);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return log_probs_.size(); }
  std::span<const double> log_probs() const { return log_probs_; }
  double log_prob(std::size_t i) const { return log_probs_[i]; }
  double prob(std::size_t i) const;
  bool in_support(std::size_t i) const { return log_probs_[i] != kNegInf; }
  std::vector<std::size_t> support() const;

 private:
  Alphabet alphabet_;
  std::vector<double> log_probs_;
};

/// Normalizes nonnegative weights into a log-domain distribution. Zero
/// weights become -inf entries.
FiniteDistribution make_distribution(const std::vector<std::string>& labels,
                                     const std::vector<double>& weights);

/// The n-fold i.i.d. product of `p_z` over the lexicographic tuple alphabet.
FiniteDistribution product_power(const FiniteDistribution& p_z, int n,
                                 std::size_t atom_budget = kDefaultAtomBudget);

}  // namespace infobound

#endif  // INFOBOUND_DISTRIBUTION_HPP
