#include "infobound/joint.hpp"

#include <cmath>
#include <stdexcept>

#include "infobound/logsum.hpp"

namespace infobound {

namespace {
constexpr double kMarginalTol = 1e-12;
}

PosteriorKernel::PosteriorKernel(Alphabet dataset_alphabet,
                                 std::vector<FiniteDistribution> conditionals)
    : dataset_alphabet_(std::move(dataset_alphabet)),
      conditionals_(std::move(conditionals)) {
  if (conditionals_.size() != dataset_alphabet_.size()) {
    throw std::invalid_argument("kernel needs one conditional per dataset symbol");
  }
  for (const auto& cond : conditionals_) {
    if (cond.alphabet() != conditionals_.front().alphabet()) {
      throw std::invalid_argument("kernel conditionals use mismatched alphabets");
    }
  }
}

JointModel::JointModel(FiniteDistribution p_z, int n, PosteriorKernel kernel,
                       FiniteDistribution p_zn, FiniteDistribution p_w,
                       std::vector<double> joint_log)
    : p_z_(std::move(p_z)),
      n_(n),
      kernel_(std::move(kernel)),
      p_zn_(std::move(p_zn)),
      p_w_(std::move(p_w)),
      joint_log_(std::move(joint_log)) {}

JointModel build_joint(const FiniteDistribution& p_z, int n,
                       const PosteriorKernel& kernel, std::size_t atom_budget) {
  if (n < 1) throw std::invalid_argument("build_joint requires n >= 1");
  FiniteDistribution p_zn = product_power(p_z, n, atom_budget);
  if (kernel.dataset_alphabet() != p_zn.alphabet()) {
    throw std::invalid_argument(
        "kernel/dataset mismatch: kernel alphabet is not the n-fold product");
  }
  const std::size_t n_w = kernel.hypothesis_alphabet().size();
  const std::size_t n_zn = p_zn.size();
  if (n_zn > atom_budget / n_w) {
    throw std::invalid_argument("enumeration too large: joint exceeds atom budget");
  }

  std::vector<double> joint_log(n_w * n_zn, kNegInf);
  for (std::size_t zn = 0; zn < n_zn; ++zn) {
    const double lp_zn = p_zn.log_prob(zn);
    if (lp_zn == kNegInf) continue;
    const auto& cond = kernel.conditional(zn);
    for (std::size_t w = 0; w < n_w; ++w) {
      const double lc = cond.log_prob(w);
      if (lc != kNegInf) joint_log[zn * n_w + w] = std::min(lp_zn + lc, 0.0);
    }
  }

  // marginal over datasets: P(w) = sum_zn P(w, zn)
  std::vector<double> row(n_zn);
  std::vector<double> log_pw(n_w);
  for (std::size_t w = 0; w < n_w; ++w) {
    for (std::size_t zn = 0; zn < n_zn; ++zn) {
      row[zn] = joint_log[zn * n_w + w];
    }
    log_pw[w] = std::min(log_sum_exp(row), 0.0);
  }
  FiniteDistribution p_w(kernel.hypothesis_alphabet(), std::move(log_pw));

  // marginal-consistency and absolute-continuity checks; violations here
  // mean a bug, not bad input
  std::vector<double> col(n_w);
  for (std::size_t zn = 0; zn < n_zn; ++zn) {
    for (std::size_t w = 0; w < n_w; ++w) {
      col[w] = joint_log[zn * n_w + w];
    }
    const double lse = log_sum_exp(col);
    const double expect = p_zn.log_prob(zn);
    const double diff = std::abs(std::exp(lse) - std::exp(expect));
    if (diff > kMarginalTol) {
      throw std::logic_error("joint marginal over W is inconsistent with P_Zn");
    }
  }
  for (std::size_t zn = 0; zn < n_zn; ++zn) {
    for (std::size_t w = 0; w < n_w; ++w) {
      if (joint_log[zn * n_w + w] != kNegInf &&
          (p_w.log_prob(w) == kNegInf || p_zn.log_prob(zn) == kNegInf)) {
        throw std::logic_error("joint support atom outside product support");
      }
    }
  }

  return JointModel(p_z, n, kernel, std::move(p_zn), std::move(p_w),
                    std::move(joint_log));
}

double expect(const JointModel& model,
              const std::function<double(std::size_t, std::size_t)>& f) {
  const std::size_t n_w = model.hypothesis_count();
  const std::size_t n_zn = model.dataset_count();
  KahanSum acc;
  for (std::size_t zn = 0; zn < n_zn; ++zn) {
    for (std::size_t w = 0; w < n_w; ++w) {
      const double lp = model.joint_log_prob(w, zn);
      if (lp == kNegInf) continue;
      const double value = f(w, zn);
      if (!std::isfinite(value)) {
        throw std::invalid_argument("non-finite integrand on the joint support");
      }
      acc.add(std::exp(lp) * value);
    }
  }
  return acc.value();
}

}  // namespace infobound
