#include "infobound/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "infobound/logsum.hpp"

namespace infobound {

namespace {
constexpr double kNormTol = 1e-12;
}

FiniteDistribution::FiniteDistribution(Alphabet alphabet,
                                       std::vector<double> log_probs)
    : alphabet_(std::move(alphabet)), log_probs_(std::move(log_probs)) {
  if (log_probs_.size() != alphabet_.size()) {
    throw std::invalid_argument("log_probs size does not match alphabet size");
  }
  for (auto& lp : log_probs_) {
    if (std::isnan(lp) || lp == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("log probability must be finite or -inf");
    }
    if (lp > kNormTol) {
      throw std::invalid_argument("log probability above 0");
    }
    lp = std::min(lp, 0.0);  // clamp rounding spill from normalization
  }
  const double total = log_sum_exp(log_probs_);
  if (std::abs(total) > kNormTol) {
    throw std::invalid_argument("distribution not normalized");
  }
}

double FiniteDistribution::prob(std::size_t i) const {
  const double lp = log_probs_[i];
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

std::vector<std::size_t> FiniteDistribution::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < log_probs_.size(); ++i) {
    if (log_probs_[i] != kNegInf) idx.push_back(i);
  }
  return idx;
}

FiniteDistribution make_distribution(const std::vector<std::string>& labels,
                                     const std::vector<double>& weights) {
  if (labels.size() != weights.size()) {
    throw std::invalid_argument("labels and weights differ in length");
  }
  std::vector<double> log_w(weights.size());
  bool any_positive = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (std::isnan(w) || w < 0.0) {
      throw std::invalid_argument("invalid weight: weights must be nonnegative");
    }
    if (w > 0.0) any_positive = true;
    log_w[i] = w == 0.0 ? kNegInf : std::log(w);
  }
  if (!any_positive) {
    throw std::invalid_argument("degenerate distribution: all weights are zero");
  }
  const double total = log_sum_exp(log_w);
  for (auto& lw : log_w) {
    if (lw != kNegInf) lw -= total;
  }
  return FiniteDistribution(Alphabet(labels), std::move(log_w));
}

FiniteDistribution product_power(const FiniteDistribution& p_z, int n,
                                 std::size_t atom_budget) {
  if (n < 1) throw std::invalid_argument("product power requires n >= 1");
  Alphabet tuples = Alphabet::tuple_power(p_z.alphabet(), n, atom_budget);
  const std::size_t base = p_z.size();
  std::vector<double> log_probs(tuples.size());
  std::vector<std::size_t> digits;
  for (std::size_t i = 0; i < log_probs.size(); ++i) {
    decode_tuple(i, n, base, digits);
    double lp = 0.0;
    for (std::size_t z : digits) {
      lp += p_z.log_prob(z);
    }
    log_probs[i] = std::min(lp, 0.0);
  }
  return FiniteDistribution(std::move(tuples), std::move(log_probs));
}

}  // namespace infobound
