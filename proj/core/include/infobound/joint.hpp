#ifndef INFOBOUND_JOINT_HPP
#define INFOBOUND_JOINT_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "infobound/distribution.hpp"

namespace infobound {

/// Conditional distribution P(W | Z^n = z^n): one normalized distribution
/// over the hypothesis alphabet per dataset symbol.
class PosteriorKernel {
 public:
  PosteriorKernel(Alphabet dataset_alphabet,
                  std::vector<FiniteDistribution> conditionals);

  const Alphabet& dataset_alphabet() const { return dataset_alphabet_; }
  const Alphabet& hypothesis_alphabet() const {
    return conditionals_.front().alphabet();
  }
  std::size_t dataset_count() const { return conditionals_.size(); }
  const FiniteDistribution& conditional(std::size_t dataset_index) const {
    return conditionals_[dataset_index];
  }

 private:
  Alphabet dataset_alphabet_;
  std::vector<FiniteDistribution> conditionals_;
};

/// Joint distribution of (W, Z^n) together with its marginals, all in the
/// log domain. Immutable after construction; build via build_joint().
class JointModel {
 public:
  const FiniteDistribution& p_z() const { return p_z_; }
  int n() const { return n_; }
  const PosteriorKernel& kernel() const { return kernel_; }
  const FiniteDistribution& p_zn() const { return p_zn_; }
  const FiniteDistribution& p_w() const { return p_w_; }

  std::size_t hypothesis_count() const { return p_w_.size(); }
  std::size_t dataset_count() const { return p_zn_.size(); }
  std::size_t atom_count() const { return joint_log_.size(); }

  /// log P(W = w, Z^n = z^n); -inf outside the support.
  double joint_log_prob(std::size_t w, std::size_t zn) const {
    return joint_log_[zn * p_w_.size() + w];
  }

 private:
  JointModel(FiniteDistribution p_z, int n, PosteriorKernel kernel,
             FiniteDistribution p_zn, FiniteDistribution p_w,
             std::vector<double> joint_log);

  friend JointModel build_joint(const FiniteDistribution&, int,
                                const PosteriorKernel&, std::size_t);

  FiniteDistribution p_z_;
  int n_;
  PosteriorKernel kernel_;
  FiniteDistribution p_zn_;
  FiniteDistribution p_w_;
  std::vector<double> joint_log_;  // dataset-major: [zn * |W| + w]
};

/// Builds the joint P(w, z^n) = P(z^n) P(w | z^n) and both marginals,
/// checking marginal consistency and absolute continuity to 1e-12.
JointModel build_joint(const FiniteDistribution& p_z, int n,
                       const PosteriorKernel& kernel,
                       std::size_t atom_budget = kDefaultAtomBudget);

/// Expectation of f(w, zn) under the joint, accumulated with compensated
/// summation. f is evaluated on support atoms only and must be finite there.
double expect(const JointModel& model,
              const std::function<double(std::size_t, std::size_t)>& f);

}  // namespace infobound

#endif  // INFOBOUND_JOINT_HPP
