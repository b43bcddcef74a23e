#include "infobound/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "infobound/logsum.hpp"

namespace infobound {

LearningProblem::LearningProblem(Alphabet instances, Alphabet hypotheses,
                                 std::vector<std::vector<double>> loss,
                                 std::optional<double> sigma)
    : instances_(std::move(instances)),
      hypotheses_(std::move(hypotheses)),
      loss_(std::move(loss)),
      sigma_(sigma) {
  if (loss_.size() != hypotheses_.size()) {
    throw std::invalid_argument("loss: need one row per hypothesis");
  }
  for (const auto& row : loss_) {
    if (row.size() != instances_.size()) {
      throw std::invalid_argument("loss: need one column per instance");
    }
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("loss: entries must be finite and nonnegative");
      }
    }
  }
  if (sigma_ && !(*sigma_ > 0.0)) {
    throw std::invalid_argument("sigma must be positive");
  }
}

ResolvedSigma sigma_from_bounded_loss(const LearningProblem& problem) {
  if (problem.sigma_spec()) return {*problem.sigma_spec(), false};
  double lo = problem.loss(0, 0);
  double hi = lo;
  for (const auto& row : problem.loss_table()) {
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi == lo) {
    // constant loss: sigma = 0 would make every bound undefined
    return {1e-12, true};
  }
  return {(hi - lo) / 2.0, false};
}

namespace {

double empirical_loss_sum(const LearningProblem& problem, std::size_t w,
                          const std::vector<std::size_t>& zs) {
  double total = 0.0;
  for (std::size_t z : zs) {
    total += problem.loss(w, z);
  }
  return total;
}

std::vector<double> normalized_log(std::vector<double> log_w) {
  const double total = log_sum_exp(log_w);
  for (auto& lw : log_w) {
    if (lw != kNegInf) lw = std::min(lw - total, 0.0);
  }
  return log_w;
}

PosteriorKernel kernel_from_rule(
    const LearningProblem& problem, int n, std::size_t atom_budget,
    const std::function<std::vector<double>(const std::vector<std::size_t>&)>&
        rule) {
  Alphabet datasets =
      Alphabet::tuple_power(problem.instances(), n, atom_budget);
  std::vector<FiniteDistribution> conditionals;
  conditionals.reserve(datasets.size());
  std::vector<std::size_t> zs;
  for (std::size_t zn = 0; zn < datasets.size(); ++zn) {
    decode_tuple(zn, n, problem.instances().size(), zs);
    conditionals.emplace_back(problem.hypotheses(), rule(zs));
  }
  return PosteriorKernel(std::move(datasets), std::move(conditionals));
}

}  // namespace

std::vector<double> conditional_log_probs(const LearningProblem& problem,
                                          const LearnerSpec& learner,
                                          const std::vector<std::size_t>& zs) {
  const std::size_t n_w = problem.hypotheses().size();
  std::vector<double> log_prior(n_w, -std::log(static_cast<double>(n_w)));
  if (!learner.prior_weights.empty()) {
    if (learner.prior_weights.size() != n_w) {
      throw std::invalid_argument("prior: need one weight per hypothesis");
    }
    FiniteDistribution prior =
        make_distribution(problem.hypotheses().labels(), learner.prior_weights);
    log_prior.assign(prior.log_probs().begin(), prior.log_probs().end());
  }

  switch (learner.kind) {
    case LearnerKind::kIndependent:
      return log_prior;
    case LearnerKind::kGibbs: {
      std::vector<double> log_w(n_w);
      for (std::size_t w = 0; w < n_w; ++w) {
        log_w[w] = log_prior[w] == kNegInf
                       ? kNegInf
                       : log_prior[w] - learner.beta * empirical_loss_sum(problem, w, zs);
      }
      return normalized_log(std::move(log_w));
    }
    case LearnerKind::kErmNoisy: {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t w = 0; w < n_w; ++w) {
        best = std::min(best, empirical_loss_sum(problem, w, zs));
      }
      std::size_t ties = 0;
      std::vector<bool> is_min(n_w, false);
      for (std::size_t w = 0; w < n_w; ++w) {
        if (empirical_loss_sum(problem, w, zs) == best) {
          is_min[w] = true;
          ++ties;
        }
      }
      std::vector<double> log_w(n_w);
      const double uniform = learner.noise / static_cast<double>(n_w);
      for (std::size_t w = 0; w < n_w; ++w) {
        const double p =
            uniform + (is_min[w] ? (1.0 - learner.noise) / static_cast<double>(ties)
                                 : 0.0);
        log_w[w] = p == 0.0 ? kNegInf : std::log(p);
      }
      return normalized_log(std::move(log_w));
    }
  }
  throw std::logic_error("unknown learner kind");
}

PosteriorKernel gibbs_kernel(const LearningProblem& problem, int n, double beta,
                             const FiniteDistribution& prior,
                             std::size_t atom_budget) {
  if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
  LearnerSpec spec;
  spec.kind = LearnerKind::kGibbs;
  spec.beta = beta;
  spec.prior_weights.resize(prior.size());
  for (std::size_t w = 0; w < prior.size(); ++w) {
    spec.prior_weights[w] = prior.prob(w);
  }
  return kernel_from_rule(problem, n, atom_budget, [&](const auto& zs) {
    return conditional_log_probs(problem, spec, zs);
  });
}

PosteriorKernel erm_noisy_kernel(const LearningProblem& problem, int n,
                                 double noise, std::size_t atom_budget) {
  if (noise < 0.0 || noise > 1.0) {
    throw std::invalid_argument("noise must lie in [0, 1]");
  }
  LearnerSpec spec;
  spec.kind = LearnerKind::kErmNoisy;
  spec.noise = noise;
  return kernel_from_rule(problem, n, atom_budget, [&](const auto& zs) {
    return conditional_log_probs(problem, spec, zs);
  });
}

PosteriorKernel independent_kernel(const FiniteDistribution& prior, int n,
                                   const Alphabet& instance_alphabet,
                                   std::size_t atom_budget) {
  Alphabet datasets = Alphabet::tuple_power(instance_alphabet, n, atom_budget);
  std::vector<double> log_prior(prior.log_probs().begin(),
                                prior.log_probs().end());
  std::vector<FiniteDistribution> conditionals(
      datasets.size(), FiniteDistribution(prior.alphabet(), log_prior));
  return PosteriorKernel(std::move(datasets), std::move(conditionals));
}

namespace {

using nlohmann::json;

void require_fields(const json& j, const char* where,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional) {
  for (const char* name : required) {
    if (!j.contains(name)) {
      throw std::invalid_argument(std::string(where) + ": missing field '" +
                                  name + "'");
    }
  }
  for (const auto& [key, _] : j.items()) {
    const bool known =
        std::any_of(required.begin(), required.end(),
                    [&](const char* n) { return key == n; }) ||
        std::any_of(optional.begin(), optional.end(),
                    [&](const char* n) { return key == n; });
    if (!known) {
      throw std::invalid_argument(std::string(where) + ": unknown field '" +
                                  key + "'");
    }
  }
}

std::vector<std::string> parse_labels(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string(field) + ": expected a nonempty array");
  }
  std::vector<std::string> labels;
  labels.reserve(j.size());
  for (const auto& item : j) {
    if (item.is_string()) {
      labels.push_back(item.get<std::string>());
    } else if (item.is_number()) {
      labels.push_back(item.dump());
    } else {
      throw std::invalid_argument(std::string(field) +
                                  ": labels must be strings or numbers");
    }
  }
  return labels;
}

std::vector<double> parse_numbers(const json& j, const char* field) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(field) + ": expected an array");
  }
  std::vector<double> values;
  values.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_number()) {
      throw std::invalid_argument(std::string(field) + ": expected numbers");
    }
    values.push_back(item.get<double>());
  }
  return values;
}

}  // namespace

ProblemSpec parse_problem_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("problem spec: ") + e.what());
  }
  require_fields(j, "problem spec",
                 {"instances", "hypotheses", "p_z", "loss", "learner", "n"},
                 {"sigma"});

  auto instance_labels = parse_labels(j["instances"], "instances");
  auto hypothesis_labels = parse_labels(j["hypotheses"], "hypotheses");
  auto p_z_weights = parse_numbers(j["p_z"], "p_z");
  if (p_z_weights.size() != instance_labels.size()) {
    throw std::invalid_argument("p_z: need one weight per instance");
  }

  const auto& loss_json = j["loss"];
  if (!loss_json.is_array() || loss_json.size() != hypothesis_labels.size()) {
    throw std::invalid_argument("loss: need one row per hypothesis");
  }
  std::vector<std::vector<double>> loss;
  loss.reserve(loss_json.size());
  for (const auto& row : loss_json) {
    auto values = parse_numbers(row, "loss");
    if (values.size() != instance_labels.size()) {
      throw std::invalid_argument("loss: need one column per instance");
    }
    loss.push_back(std::move(values));
  }

  std::optional<double> sigma;
  if (j.contains("sigma") && !(j["sigma"].is_string() && j["sigma"] == "auto")) {
    if (!j["sigma"].is_number()) {
      throw std::invalid_argument("sigma: expected a number or \"auto\"");
    }
    sigma = j["sigma"].get<double>();
  }

  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) {
    throw std::invalid_argument("n: expected a positive integer");
  }

  const auto& learner_json = j["learner"];
  if (!learner_json.is_object()) {
    throw std::invalid_argument("learner: expected an object");
  }
  require_fields(learner_json, "learner", {"kind"}, {"beta", "prior", "noise"});
  LearnerSpec learner;
  const std::string kind = learner_json["kind"].is_string()
                               ? learner_json["kind"].get<std::string>()
                               : "";
  if (kind == "gibbs") {
    learner.kind = LearnerKind::kGibbs;
    if (!learner_json.contains("beta") || !learner_json["beta"].is_number()) {
      throw std::invalid_argument("learner: gibbs requires numeric 'beta'");
    }
    learner.beta = learner_json["beta"].get<double>();
    if (learner.beta < 0.0) {
      throw std::invalid_argument("learner: beta must be nonnegative");
    }
  } else if (kind == "erm_noisy") {
    learner.kind = LearnerKind::kErmNoisy;
    if (!learner_json.contains("noise") || !learner_json["noise"].is_number()) {
      throw std::invalid_argument("learner: erm_noisy requires numeric 'noise'");
    }
    learner.noise = learner_json["noise"].get<double>();
    if (learner.noise < 0.0 || learner.noise > 1.0) {
      throw std::invalid_argument("learner: noise must lie in [0, 1]");
    }
  } else if (kind == "independent") {
    learner.kind = LearnerKind::kIndependent;
  } else {
    throw std::invalid_argument(
        "learner: kind must be gibbs, erm_noisy, or independent");
  }
  if (learner_json.contains("prior")) {
    learner.prior_weights = parse_numbers(learner_json["prior"], "prior");
    if (learner.prior_weights.size() != hypothesis_labels.size()) {
      throw std::invalid_argument("prior: need one weight per hypothesis");
    }
  }

  LearningProblem problem(Alphabet(instance_labels), Alphabet(hypothesis_labels),
                          std::move(loss), sigma);
  FiniteDistribution p_z = make_distribution(instance_labels, p_z_weights);
  return ProblemSpec{std::move(problem), std::move(p_z), std::move(learner),
                     j["n"].get<int>()};
}

ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open problem spec file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_spec(buffer.str());
}

PosteriorKernel build_kernel(const ProblemSpec& spec, int n,
                             std::size_t atom_budget) {
  return kernel_from_rule(spec.problem, n, atom_budget, [&](const auto& zs) {
    return conditional_log_probs(spec.problem, spec.learner, zs);
  });
}

JointModel build_model(const ProblemSpec& spec, std::optional<int> n_override,
                       std::size_t atom_budget) {
  const int n = n_override.value_or(spec.n);
  if (n < 1) throw std::invalid_argument("n must be positive");
  return build_joint(spec.p_z, n, build_kernel(spec, n, atom_budget),
                     atom_budget);
}

}  // namespace infobound
